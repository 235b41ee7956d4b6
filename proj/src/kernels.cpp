#include "qlim/kernels.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qlim/quadrature.hpp"

namespace qlim::kernels {

namespace {

double b_closed_raw(TrackingMode mode, double x) {
  const double x2 = x * x;
  const double s = std::sin(2.0 * x);
  if (mode == TrackingMode::OneWay) return 8.0 / 3.0 - 4.0 / x2 + 2.0 * s / (x2 * x);
  const double c = std::cos(2.0 * x);
  return 1.0 - c / 3.0 - (3.0 + c) / x2 + 2.0 * s / (x2 * x);
}

}  // namespace

double b_closed(TrackingMode mode, double x) {
  if (std::isnan(x)) throw std::domain_error("b_closed: x is NaN");
  x = std::fabs(x);
  if (x == 0.0) return 0.0;
  if (x < kSeriesSwitch) return b_series(mode, x, 12);
  return b_closed_raw(mode, x);
}

double b_series(TrackingMode mode, double x, int n_terms) {
  if (n_terms < 2) throw std::invalid_argument("b_series: need at least 2 terms");
  x = std::fabs(x);
  if (x > 4.0) throw std::domain_error("b_series: series branch limited to |x| <= 4");
  const double x2 = x * x;

  if (mode == TrackingMode::OneWay) {
    // term_0 = (8/15) x^2, term_{j+1}/term_j = -4x^2 / ((2j+6)(2j+7));
    // this is the sine series with the 1/x^2 and constant parts cancelled
    // exactly, so no large terms ever appear.
    double term = (8.0 / 15.0) * x2;
    double sum = term;
    for (int j = 0; j + 1 < n_terms; ++j) {
      term *= -4.0 * x2 / ((2.0 * j + 6.0) * (2.0 * j + 7.0));
      sum += term;
    }
    return sum;
  }

  // Two-way: term_j = (-1)^{j+1} 2^{2j+2} x^{2j+2} g_j with
  // g_j = -1/(3 (2j+2)!) + 4/(2j+4)! - 16/(2j+5)!; the three factorial
  // streams come from the cos(2x)/3, cos(2x)/x^2 and sin(2x)/x^3 pieces
  // after their singular parts cancel.
  double sum = 0.0;
  double pow4x2 = 4.0 * x2;         // (2x)^{2j+2} / x^0 ... tracked as 4^{j+1} x^{2j+2}
  double f2 = 2.0;                  // (2j+2)!
  double f4 = 24.0;                 // (2j+4)!
  double f5 = 120.0;                // (2j+5)!
  double sign = -1.0;               // (-1)^{j+1}
  for (int j = 0; j < n_terms; ++j) {
    const double g = -1.0 / (3.0 * f2) + 4.0 / f4 - 16.0 / f5;
    sum += sign * pow4x2 * g;
    sign = -sign;
    pow4x2 *= 4.0 * x2;
    const double n2 = 2.0 * j + 2.0, n4 = 2.0 * j + 4.0, n5 = 2.0 * j + 5.0;
    f2 *= (n2 + 1.0) * (n2 + 2.0);
    f4 *= (n4 + 1.0) * (n4 + 2.0);
    f5 *= (n5 + 1.0) * (n5 + 2.0);
  }
  return sum;
}

double b_angular_oracle(TrackingMode mode, double x, double abs_tol) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("b_angular_oracle: abs_tol must be > 0");
  if (std::isnan(x)) throw std::domain_error("b_angular_oracle: x is NaN");
  x = std::fabs(x);

  // Uniform average over gamma: (1/2) * integral over [-1, 1].
  std::function<double(double)> integrand;
  if (mode == TrackingMode::OneWay) {
    // (1+gamma)^2 |e^{ix} - e^{i gamma x}|^2 = 4 (1+gamma)^2 sin^2(x(1-gamma)/2)
    integrand = [x](double g) {
      const double s = std::sin(0.5 * x * (1.0 - g));
      return 4.0 * (1.0 + g) * (1.0 + g) * s * s;
    };
  } else {
    // (1/4) |(1+gamma)(e^{ix} - e^{i gamma x}) - (1-gamma)(e^{-ix} - e^{i gamma x})|^2
    integrand = [x](double g) {
      const std::complex<double> eix = std::polar(1.0, x);
      const std::complex<double> egx = std::polar(1.0, g * x);
      const std::complex<double> z =
          (1.0 + g) * (eix - egx) - (1.0 - g) * (std::conj(eix) - egx);
      return 0.25 * std::norm(z);
    };
  }
  const auto r = quadrature::integrate(integrand, -1.0, 1.0, 2.0 * abs_tol);
  return 0.5 * r.value;
}

double b_high_freq(TrackingMode mode) {
  return mode == TrackingMode::OneWay ? 8.0 / 3.0 : 1.0;
}

ResponseKernel ResponseKernel::closed_form(TrackingMode mode) {
  return {mode, Strategy::ClosedForm, 12, 1e-12};
}

ResponseKernel ResponseKernel::series(TrackingMode mode, int order) {
  if (order < 2) throw std::invalid_argument("ResponseKernel: series order must be >= 2");
  return {mode, Strategy::Series, order, 1e-12};
}

ResponseKernel ResponseKernel::quadrature_oracle(TrackingMode mode, double abs_tol) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("ResponseKernel: abs_tol must be > 0");
  return {mode, Strategy::QuadratureOracle, 12, abs_tol};
}

double ResponseKernel::operator()(double x) const {
  switch (strategy) {
    case Strategy::ClosedForm: return b_closed(mode, x);
    case Strategy::Series: return b_series(mode, x, series_terms);
    case Strategy::QuadratureOracle: return b_angular_oracle(mode, x, oracle_tol);
  }
  throw std::logic_error("ResponseKernel: bad strategy");
}

namespace {

// Exceptions must not unwind out of an OpenMP region; stash the first one
// and rethrow after the join.
template <typename F>
std::vector<double> parallel_map(const std::vector<double>& xs, Exec exec, F f) {
  std::vector<double> out(xs.size());
  const long n = static_cast<long>(xs.size());
  std::exception_ptr failure = nullptr;
#pragma omp parallel for if (exec == Exec::Parallel) schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = f(xs[i]);
    } catch (...) {
#pragma omp critical(qlim_kernels_map)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

std::vector<double> b_closed_grid(TrackingMode mode, const std::vector<double>& xs, Exec exec) {
  return parallel_map(xs, exec, [mode](double x) { return b_closed(mode, x); });
}

std::vector<double> b_oracle_grid(TrackingMode mode, const std::vector<double>& xs, double abs_tol,
                                  Exec exec) {
  return parallel_map(xs, exec,
                      [mode, abs_tol](double x) { return b_angular_oracle(mode, x, abs_tol); });
}

}  // namespace qlim::kernels
