#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qlim/kernels.hpp"

namespace qlim::timedomain {

enum class Parity { Even, Odd };

struct Impulse {
  double location;  // signed time
  double weight;
};

// Polynomial piece on an interval of s = |t|, coefficients in ascending
// powers of s. Parity of the owning function supplies the t < 0 branch.
struct Segment {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> coeffs;

  double eval(double s) const;
};

// A distribution made of Dirac impulses plus a piecewise polynomial regular
// part. Impulses are exact data, never smeared onto a grid; that keeps the
// Fourier and integration identities checkable to machine precision.
struct GeneralizedTimeFunction {
  Parity parity = Parity::Even;
  std::vector<Impulse> impulses;   // sorted by location
  std::vector<Segment> segments;   // on s >= 0, ordered, non-overlapping

  // Regular (non-impulsive) part at time t. The sign convention is
  // eps(0) = 0, so an Odd function evaluates to 0 at t = 0 exactly. At a
  // shared segment boundary the left polynomial wins, making the value at a
  // jump the left-sided limit.
  double regular_at(double t) const;

  bool is_zero() const;

  // Ordering/overlap/parity invariants; throws std::invalid_argument.
  void validate() const;
};

// Impulse response of the tracked length to curvature in the time domain.
// One-way: (8/3) delta(t) with a quadratic regular part on |t| <= 2 tau.
// Two-way: delta(t) - (1/6)(delta(t - 2 tau) + delta(t + 2 tau)) plus its
// own quadratic. Throws std::domain_error for tau <= 0.
GeneralizedTimeFunction b_time(kernels::TrackingMode mode, double tau);

// Running integral of b_time from 0: odd, impulse-free, cubic on
// |t| <= 2 tau, with the value 1/2 * b_high_freq(mode) just above t = 0.
GeneralizedTimeFunction B_time(kernels::TrackingMode mode, double tau);

// Integral from 0 to t of an even generalized function. An impulse at the
// origin contributes half its weight (eps(0) = 0 convention); impulses at
// interior points become jumps across their location. The result must decay
// to zero past the last feature; anything else is not representable here and
// throws std::domain_error.
GeneralizedTimeFunction integrate_b_to_B(const GeneralizedTimeFunction& b);

// Forward transform integral of f(t) e^{i omega t} dt. Impulses contribute
// weight * e^{i omega location}; polynomial segments are integrated in
// closed form, so there is no grid error anywhere.
std::complex<double> gtf_fourier(const GeneralizedTimeFunction& f, double omega);

// Max deviation over the grid of (C[omega] - C[-omega]) from
// l_p^2 * b(omega tau) / omega -- the antisymmetric part of any length
// spectrum is pinned to the response kernel, independent of the state.
double commutator_spectrum_check(const std::function<double(double)>& spectrum,
                                 kernels::TrackingMode mode, double tau, double l_p,
                                 const std::vector<double>& omegas);

}  // namespace qlim::timedomain
