#include "qlim/timedomain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qlim::timedomain {

using kernels::TrackingMode;

double Segment::eval(double s) const {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * s + *it;
  return v;
}

double GeneralizedTimeFunction::regular_at(double t) const {
  if (parity == Parity::Odd && t == 0.0) return 0.0;
  const double s = std::fabs(t);
  for (const auto& seg : segments) {
    if (s >= seg.lo && s <= seg.hi) {
      const double v = seg.eval(s);
      return (parity == Parity::Odd && t < 0.0) ? -v : v;
    }
  }
  return 0.0;
}

bool GeneralizedTimeFunction::is_zero() const { return impulses.empty() && segments.empty(); }

void GeneralizedTimeFunction::validate() const {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!(s.lo >= 0.0) || !(s.hi > s.lo))
      throw std::invalid_argument("GeneralizedTimeFunction: bad segment interval");
    if (i > 0 && s.lo < segments[i - 1].hi)
      throw std::invalid_argument("GeneralizedTimeFunction: overlapping segments");
  }
  for (std::size_t i = 1; i < impulses.size(); ++i)
    if (impulses[i].location < impulses[i - 1].location)
      throw std::invalid_argument("GeneralizedTimeFunction: impulses out of order");
  if (parity == Parity::Even) {
    // Every off-origin impulse needs a mirror of equal weight.
    for (const auto& imp : impulses) {
      if (imp.location == 0.0) continue;
      const bool mirrored =
          std::any_of(impulses.begin(), impulses.end(), [&](const Impulse& other) {
            return other.location == -imp.location && other.weight == imp.weight;
          });
      if (!mirrored)
        throw std::invalid_argument("GeneralizedTimeFunction: even parity needs mirrored impulses");
    }
  } else {
    for (const auto& imp : impulses)
      if (imp.location == 0.0 && imp.weight != 0.0)
        throw std::invalid_argument("GeneralizedTimeFunction: odd parity forbids impulse at 0");
  }
}

static void check_tau(double tau) {
  if (!(tau > 0.0)) throw std::domain_error("tau must be > 0");
}

GeneralizedTimeFunction b_time(TrackingMode mode, double tau) {
  check_tau(tau);
  GeneralizedTimeFunction f;
  f.parity = Parity::Even;
  const double t2 = tau * tau, t3 = t2 * tau;
  if (mode == TrackingMode::OneWay) {
    // -(2 tau - s)^2 / (2 tau^3) on s in [0, 2 tau]
    f.impulses = {{0.0, 8.0 / 3.0}};
    f.segments = {{0.0, 2.0 * tau, {-2.0 / tau, 2.0 / t2, -0.5 / t3}}};
  } else {
    f.impulses = {{-2.0 * tau, -1.0 / 6.0}, {0.0, 1.0}, {2.0 * tau, -1.0 / 6.0}};
    f.segments = {{0.0, 2.0 * tau, {-1.0 / tau, 1.5 / t2, -0.5 / t3}}};
  }
  return f;
}

GeneralizedTimeFunction B_time(TrackingMode mode, double tau) {
  check_tau(tau);
  GeneralizedTimeFunction f;
  f.parity = Parity::Odd;
  const double t2 = tau * tau, t3 = t2 * tau;
  if (mode == TrackingMode::OneWay) {
    // (2 tau - s)^3 / (6 tau^3): starts at 4/3, reaches 0 at s = 2 tau.
    f.segments = {{0.0, 2.0 * tau, {4.0 / 3.0, -2.0 / tau, 1.0 / t2, -1.0 / (6.0 * t3)}}};
  } else {
    // Starts at 1/2, ends at 1/6 just inside s = 2 tau; the -1/6 impulses of
    // the two-way b account for the drop to 0 beyond.
    f.segments = {{0.0, 2.0 * tau, {0.5, -1.0 / tau, 0.75 / t2, -1.0 / (6.0 * t3)}}};
  }
  return f;
}

namespace {

// Antiderivative (vanishing at 0) of ascending-power coefficients.
std::vector<double> antiderivative(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
  return out;
}

double eval_poly(const std::vector<double>& c, double s) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
  return v;
}

}  // namespace

GeneralizedTimeFunction integrate_b_to_B(const GeneralizedTimeFunction& b) {
  b.validate();
  if (b.parity != Parity::Even)
    throw std::domain_error("integrate_b_to_B: input must be even");

  GeneralizedTimeFunction out;
  out.parity = Parity::Odd;
  if (b.is_zero()) return out;

  // Breakpoints on the s >= 0 half-axis: segment edges and impulse sites.
  std::vector<double> brk = {0.0};
  for (const auto& seg : b.segments) {
    brk.push_back(seg.lo);
    brk.push_back(seg.hi);
  }
  for (const auto& imp : b.impulses)
    if (imp.location >= 0.0) brk.push_back(imp.location);
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end()), brk.end());

  // Running value of the integral, seeded by the half-weight of an impulse
  // sitting exactly at the origin.
  double acc = 0.0;
  double scale = 0.0;
  for (const auto& imp : b.impulses) {
    scale = std::max(scale, std::fabs(imp.weight));
    if (imp.location == 0.0) acc += 0.5 * imp.weight;
  }

  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    const double lo = brk[i], hi = brk[i + 1];
    const double mid = 0.5 * (lo + hi);
    const Segment* src = nullptr;
    for (const auto& seg : b.segments)
      if (mid >= seg.lo && mid <= seg.hi) {
        src = &seg;
        break;
      }

    Segment piece;
    piece.lo = lo;
    piece.hi = hi;
    if (src) {
      piece.coeffs = antiderivative(src->coeffs);
      piece.coeffs[0] = acc - eval_poly(piece.coeffs, lo);
      acc = eval_poly(piece.coeffs, hi);
    } else {
      piece.coeffs = {acc};
    }
    if (piece.coeffs.size() > 1 || piece.coeffs[0] != 0.0) out.segments.push_back(piece);
    scale = std::max(scale, std::fabs(acc));

    // Crossing an interior impulse adds its full weight.
    for (const auto& imp : b.impulses)
      if (imp.location == hi) acc += imp.weight;
  }

  // Everything in this library integrates to zero past its last feature; a
  // residual tail would need infinite support, which Segment cannot carry.
  if (std::fabs(acc) > 1e-12 * std::max(scale, 1.0))
    throw std::domain_error("integrate_b_to_B: integral does not return to zero");

  return out;
}

namespace {

// I_k = integral of s^k e^{i omega s} over [lo, hi], k = 0..kmax.
// Small |omega hi|: Taylor in omega (also covers omega = 0). Otherwise the
// integration-by-parts recurrence, stable upward for the low degrees here.
std::vector<std::complex<double>> phase_moments(int kmax, double lo, double hi, double omega) {
  std::vector<std::complex<double>> moments(kmax + 1);
  if (std::fabs(omega) * std::max(std::fabs(lo), std::fabs(hi)) < 0.5) {
    for (int k = 0; k <= kmax; ++k) {
      std::complex<double> sum = 0.0;
      std::complex<double> iw_pow = 1.0;  // (i omega)^m / m!
      double hi_pow = std::pow(hi, k + 1), lo_pow = std::pow(lo, k + 1);
      for (int m = 0;; ++m) {
        const std::complex<double> term = iw_pow * ((hi_pow - lo_pow) / (k + m + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum) || m > 60) break;
        iw_pow *= std::complex<double>(0.0, omega) / (m + 1.0);
        hi_pow *= hi;
        lo_pow *= lo;
      }
      moments[k] = sum;
    }
    return moments;
  }
  const std::complex<double> iw(0.0, omega);
  const std::complex<double> ehi = std::polar(1.0, omega * hi);
  const std::complex<double> elo = std::polar(1.0, omega * lo);
  moments[0] = (ehi - elo) / iw;
  double hi_pow = 1.0, lo_pow = 1.0;
  for (int k = 1; k <= kmax; ++k) {
    hi_pow *= hi;
    lo_pow *= lo;
    moments[k] = (hi_pow * ehi - lo_pow * elo) / iw - (static_cast<double>(k) / iw) * moments[k - 1];
  }
  return moments;
}

}  // namespace

std::complex<double> gtf_fourier(const GeneralizedTimeFunction& f, double omega) {
  std::complex<double> total = 0.0;
  for (const auto& imp : f.impulses)
    total += imp.weight * std::polar(1.0, omega * imp.location);
  for (const auto& seg : f.segments) {
    const int kmax = static_cast<int>(seg.coeffs.size()) - 1;
    if (kmax < 0) continue;
    const auto moments = phase_moments(kmax, seg.lo, seg.hi, omega);
    std::complex<double> half = 0.0;
    for (int k = 0; k <= kmax; ++k) half += seg.coeffs[k] * moments[k];
    // The mirrored branch contributes the conjugate (even) or its negative (odd).
    if (f.parity == Parity::Even)
      total += 2.0 * half.real();
    else
      total += std::complex<double>(0.0, 2.0 * half.imag());
  }
  return total;
}

double commutator_spectrum_check(const std::function<double(double)>& spectrum,
                                 TrackingMode mode, double tau, double l_p,
                                 const std::vector<double>& omegas) {
  check_tau(tau);
  double worst = 0.0;
  for (double w : omegas) {
    if (!(w > 0.0))
      throw std::invalid_argument("commutator_spectrum_check: grid must be positive");
    const double antisym = spectrum(w) - spectrum(-w);
    const double expected = l_p * l_p * kernels::b_closed(mode, w * tau) / w;
    worst = std::max(worst, std::fabs(antisym - expected));
  }
  return worst;
}

}  // namespace qlim::timedomain
