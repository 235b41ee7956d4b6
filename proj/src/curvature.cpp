#include "qlim/curvature.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qlim/quadrature.hpp"

namespace qlim::curvature {

using kernels::TrackingMode;

namespace {

constexpr double kEta[4] = {1.0, -1.0, -1.0, -1.0};  // diag of the metric

}  // namespace

FourVector flip_variance(const FourVector& a) {
  FourVector out = a;
  for (int i = 1; i < 4; ++i) out[i] = -a[i];
  out.variance =
      a.variance == Variance::Covariant ? Variance::Contravariant : Variance::Covariant;
  return out;
}

double dot(const FourVector& a, const FourVector& b) {
  if (a.variance == b.variance) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += kEta[i] * a[i] * b[i];
    return s;
  }
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

bool is_lightlike(const FourVector& k, double rel_tol) {
  return std::fabs(dot(k, k)) <= rel_tol * k[0] * k[0];
}

RiemannKernel riemann_mode_kernel(const FourVector& k) {
  if (k.variance != Variance::Contravariant)
    throw std::domain_error("riemann_mode_kernel: wavevector must be contravariant");
  if (!(k[0] > 0.0)) throw std::domain_error("riemann_mode_kernel: need k0 > 0");
  if (!is_lightlike(k)) throw std::domain_error("riemann_mode_kernel: wavevector must be lightlike");

  const FourVector kc = flip_variance(k);  // covariant components
  RiemannKernel out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        for (int sigma = 0; sigma < 4; ++sigma) {
          const double eta_ns = (nu == sigma) ? kEta[nu] : 0.0;
          const double eta_mr = (mu == rho) ? kEta[mu] : 0.0;
          const double eta_ms = (mu == sigma) ? kEta[mu] : 0.0;
          const double eta_nr = (nu == rho) ? kEta[nu] : 0.0;
          out.at(mu, nu, rho, sigma) =
              0.5 * (kc[mu] * kc[rho] * eta_ns + kc[nu] * kc[sigma] * eta_mr -
                     kc[nu] * kc[rho] * eta_ms - kc[mu] * kc[sigma] * eta_nr);
        }
  return out;
}

namespace {

// R_{0a0b} x^a y^b by direct summation (x, y contravariant).
double tidal_contraction(const RiemannKernel& r, const FourVector& x, const FourVector& y) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += r.at(0, a, 0, b) * x[a] * y[b];
  return s;
}

// Correlation weight between the tidal observables of two path legs: the
// three pair products of the kernel, with the first observable's free slots
// taking u1 and the second's taking u2. For u1 = u2 this collapses to the
// square of the single contraction.
double pair_weight(const RiemannKernel& r, const FourVector& u1, const FourVector& u2) {
  const double cross = tidal_contraction(r, u1, u2);
  const double s1 = tidal_contraction(r, u1, u1);
  const double s2 = tidal_contraction(r, u2, u2);
  return 2.0 * cross * cross - s1 * s2;
}

void check_path(const PathSpec& path) {
  if (!(path.tau > 0.0)) throw std::domain_error("response: tau must be > 0");
  if (path.u.variance != Variance::Contravariant)
    throw std::domain_error("response: u must be contravariant");
  if (std::fabs(path.u[0] - 1.0) > 1e-12)
    throw std::domain_error("response: u must be normalized to u0 = 1");
  if (!is_lightlike(path.u)) throw std::domain_error("response: u must be lightlike");
  if (path.sigma_resolution == 1 || path.sigma_resolution < 0)
    throw std::domain_error("response: sigma_resolution must be 0 or >= 2");
}

// integral over [0, tau] of e^{i beta sigma} d sigma.
std::complex<double> phase_integral_closed(double beta, double tau) {
  const double z = 0.5 * beta * tau;
  const double sinc = (z == 0.0) ? 1.0 : std::sin(z) / z;
  return tau * sinc * std::polar(1.0, z);
}

// Same integral by composite Simpson with n panels; only used to validate
// the closed form against an independent discretization.
std::complex<double> phase_integral_simpson(double beta, double tau, int n) {
  if (n % 2 == 1) ++n;
  const double h = tau / n;
  std::complex<double> sum = 1.0 + std::polar(1.0, beta * tau);
  for (int j = 1; j < n; ++j)
    sum += (j % 2 == 1 ? 4.0 : 2.0) * std::polar(1.0, beta * h * j);
  return sum * (h / 3.0);
}

struct Leg {
  FourVector u;      // propagation direction, u0 = 1
  double factor;     // amplitude prefactor
  FourVector base;   // path anchor relative to the receiver
};

// Per-direction integrand value: sum over leg pairs of
// weight_ij * Re(Q_i conj(Q_j)) with Q the leg phase amplitudes.
double direction_value(const FourVector& k, const PathSpec& path,
                       const std::vector<Leg>& legs) {
  const RiemannKernel r = riemann_mode_kernel(k);
  const std::size_t n = legs.size();
  std::complex<double> q[2];
  for (std::size_t i = 0; i < n; ++i) {
    const double beta = dot(k, legs[i].u);
    const std::complex<double> seg = path.sigma_resolution == 0
                                         ? phase_integral_closed(beta, path.tau)
                                         : phase_integral_simpson(beta, path.tau,
                                                                  path.sigma_resolution);
    // Anchor phase: e^{-i k . base}.
    const double anchor = -dot(k, legs[i].base);
    q[i] = legs[i].factor * std::polar(1.0, anchor) * seg;
  }
  double val = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double w = pair_weight(r, legs[i].u, legs[j].u);
      val += w * (q[i] * std::conj(q[j])).real();
    }
  return val;
}

std::vector<Leg> build_legs(const PathSpec& path) {
  const FourVector u = path.u;
  if (path.mode == TrackingMode::OneWay) {
    // Path points sit at x - u sigma behind the receiver.
    return {{u, 1.0, FourVector{{0.0, 0.0, 0.0, 0.0}, Variance::Contravariant}}};
  }
  // Two-way: the measured length is half the round trip, so each leg enters
  // with weight 1/2. Walking back from the receiver: the return leg anchors
  // at the receiver, the outbound leg one return-flight earlier.
  FourVector u_ret = u;
  for (int i = 1; i < 4; ++i) u_ret[i] = -u[i];
  FourVector out_base{{0.0, 0.0, 0.0, 0.0}, Variance::Contravariant};
  for (int i = 0; i < 4; ++i) out_base[i] = -u_ret[i] * path.tau;
  return {{u, 0.5, out_base},
          {u_ret, 0.5, FourVector{{0.0, 0.0, 0.0, 0.0}, Variance::Contravariant}}};
}

// The path sign convention: points are x - u sigma, so the plane wave
// e^{-i k . x(sigma)} carries e^{+i (k.u) sigma} along the leg and
// e^{-i k . base} from the anchor; direction_value above uses exactly this.

double sphere_level(const PathSpec& path, double omega, const std::vector<Leg>& legs,
                    int n_theta, Exec exec) {
  const auto rings = quadrature::gauss_legendre(n_theta);
  const int n_phi = 2 * n_theta;
  const double dphi = 2.0 * M_PI / n_phi;

  std::vector<double> ring_sum(static_cast<std::size_t>(n_theta), 0.0);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
  for (int r = 0; r < n_theta; ++r) {
    try {
      const double c = rings[static_cast<std::size_t>(r)].x;
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      double acc = 0.0;
      for (int p = 0; p < n_phi; ++p) {
        const double phi = dphi * p;
        FourVector k{{omega, omega * s * std::cos(phi), omega * s * std::sin(phi), omega * c},
                     Variance::Contravariant};
        acc += direction_value(k, path, legs);
      }
      ring_sum[static_cast<std::size_t>(r)] = rings[static_cast<std::size_t>(r)].w * acc * dphi;
    } catch (...) {
#pragma omp critical(qlim_sphere_level)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  double total = 0.0;
  for (double v : ring_sum) total += v;  // fixed order: deterministic
  return total;
}

}  // namespace

double curvature_corr_weight(const FourVector& k, const FourVector& u) {
  if (u.variance != Variance::Contravariant)
    throw std::domain_error("curvature_corr_weight: u must be contravariant");
  if (std::fabs(u[0] - 1.0) > 1e-12 || !is_lightlike(u))
    throw std::domain_error("curvature_corr_weight: u must be lightlike with u0 = 1");
  const RiemannKernel r = riemann_mode_kernel(k);
  return pair_weight(r, u, u);
}

double response_first_principles(const PathSpec& path, double omega, double abs_tol,
                                 const units::PhysicalConstants& constants, Exec exec) {
  check_path(path);
  if (!(omega > 0.0)) throw std::domain_error("response: omega must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("response: abs_tol must be > 0");

  const double lp = units::derive_planck_units(constants).length_p;
  const double prefactor = lp * lp / (M_PI * omega * omega * omega);
  const auto legs = build_legs(path);

  // Node-doubling refinement; Gauss-Legendre rings converge spectrally for
  // these smooth integrands, so successive-level agreement is a sound stop.
  double prev = 0.0;
  bool have_prev = false;
  double best = 0.0, best_diff = 0.0;
  for (int n_theta = 24; n_theta <= 1536; n_theta *= 2) {
    const double value = prefactor * sphere_level(path, omega, legs, n_theta, exec);
    if (have_prev) {
      const double diff = std::fabs(value - prev);
      best = value;
      best_diff = diff;
      if (diff <= 0.25 * abs_tol) return value;
    }
    prev = value;
    have_prev = true;
  }
  throw numerical_error("response_first_principles: sphere refinement exhausted", best,
                        best_diff);
}

double response_first_principles_axial(const PathSpec& path, double omega, double abs_tol,
                                       const units::PhysicalConstants& constants) {
  check_path(path);
  if (!(omega > 0.0)) throw std::domain_error("response: omega must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("response: abs_tol must be > 0");

  const double lp = units::derive_planck_units(constants).length_p;
  const double prefactor = 2.0 * M_PI * lp * lp / (M_PI * omega * omega * omega);
  const auto legs = build_legs(path);

  // Frame aligned with the propagation axis: gamma is the cosine against u,
  // and a fixed transverse direction stands in for the integrated azimuth.
  const double nx = path.u[1], ny = path.u[2], nz = path.u[3];
  double ex, ey, ez;
  if (std::fabs(nx) <= std::fabs(ny) && std::fabs(nx) <= std::fabs(nz)) {
    ex = 0.0; ey = -nz; ez = ny;
  } else if (std::fabs(ny) <= std::fabs(nz)) {
    ex = -nz; ey = 0.0; ez = nx;
  } else {
    ex = -ny; ey = nx; ez = 0.0;
  }
  const double en = std::sqrt(ex * ex + ey * ey + ez * ez);
  ex /= en; ey /= en; ez /= en;

  const auto integrand = [&](double gamma) {
    const double s = std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
    FourVector k{{omega, omega * (gamma * nx + s * ex), omega * (gamma * ny + s * ey),
                  omega * (gamma * nz + s * ez)},
                 Variance::Contravariant};
    return direction_value(k, path, legs);
  };

  const double inner_tol = abs_tol / prefactor;
  const auto r = quadrature::integrate(integrand, -1.0, 1.0, inner_tol);
  return prefactor * r.value;
}

}  // namespace qlim::curvature
