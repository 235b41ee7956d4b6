#pragma once

#include <array>

#include "qlim/kernels.hpp"
#include "qlim/parallel.hpp"
#include "qlim/units.hpp"

namespace qlim::curvature {

enum class Variance { Covariant, Contravariant };

// Minkowski four-vector, signature (+,-,-,-), index 0 = time.
struct FourVector {
  std::array<double, 4> v{};
  Variance variance = Variance::Contravariant;

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

// Index lowering/raising with eta = diag(+,-,-,-): flips the sign of the
// spatial components and the variance tag.
FourVector flip_variance(const FourVector& a);

// Invariant product. Same-variance arguments are contracted through eta,
// mixed-variance ones by the plain index sum; the result is the same
// Lorentz scalar either way.
double dot(const FourVector& a, const FourVector& b);

// |k.k| <= rel_tol * k0^2 (inputs here are constructed, not measured).
bool is_lightlike(const FourVector& k, double rel_tol = 1e-12);

// Rank-4 curvature amplitude for one lightlike wavevector, all indices
// covariant. Stored as the full 256 entries and contracted by direct
// summation everywhere: at 4^4 entries, clarity beats symmetry-compressed
// cleverness, and the symmetries stay available as test material.
struct RiemannKernel {
  std::array<double, 256> entries{};

  double at(int mu, int nu, int rho, int sigma) const {
    return entries[static_cast<std::size_t>(((mu * 4 + nu) * 4 + rho) * 4 + sigma)];
  }
  double& at(int mu, int nu, int rho, int sigma) {
    return entries[static_cast<std::size_t>(((mu * 4 + nu) * 4 + rho) * 4 + sigma)];
  }
};

// (1/2)(k_mu k_rho eta_nu sigma + k_nu k_sigma eta_mu rho
//       - k_nu k_rho eta_mu sigma - k_mu k_sigma eta_nu rho)
// for a contravariant lightlike k with k0 > 0; throws std::domain_error
// otherwise.
RiemannKernel riemann_mode_kernel(const FourVector& k);

// Correlation weight of the tidal observable R_{0a0b} u^a u^b with itself:
// the pair-product combination of the kernel contracted with u on the free
// slots. Non-negative; homogeneous of degree 4 in k.
double curvature_corr_weight(const FourVector& k, const FourVector& u);

// A tracked light path: propagation direction u (lightlike, u0 = 1), flight
// time tau, and how the path phase integral is evaluated.
// sigma_resolution = 0 uses the closed form; n >= 2 switches to composite
// Simpson with n panels, which exists purely to cross-check the closed form.
struct PathSpec {
  kernels::TrackingMode mode = kernels::TrackingMode::OneWay;
  FourVector u{{1.0, 0.0, 0.0, 1.0}, Variance::Contravariant};
  double tau = 1.0;
  int sigma_resolution = 0;
};

// Length-noise spectral density at omega > 0 assembled from scratch:
// restrict the wavevector integral to the positive-frequency light cone,
// integrate the phase along the path leg(s) in closed form, divide by
// omega^4 for the double time integration, and quadrate over the sphere of
// propagation directions. No tunable constant anywhere: the prefactor is
// fixed by the Fourier conventions, and the result has to land on the
// closed-form kernel spectrum by itself.
//
// Full 2-D sphere quadrature (Gauss-Legendre rings x periodic trapezoid),
// refined by node doubling until two levels agree within abs_tol; throws
// numerical_error carrying the last estimate if refinement runs out.
double response_first_principles(const PathSpec& path, double omega, double abs_tol,
                                 const units::PhysicalConstants& constants = units::natural(),
                                 Exec exec = Exec::Parallel);

// Same quantity through the 1-D reduction: the integrand depends on the
// wavevector direction only through its cosine against u, so the azimuth
// can be integrated out exactly. Kept separate so the two routes stay
// independent checks of each other.
double response_first_principles_axial(const PathSpec& path, double omega, double abs_tol,
                                       const units::PhysicalConstants& constants = units::natural());

}  // namespace qlim::curvature
