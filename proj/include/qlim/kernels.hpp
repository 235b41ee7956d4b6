#pragma once

#include <vector>

#include "qlim/parallel.hpp"

namespace qlim::kernels {

// Whether the distance is read from a single light passage or from half a
// round trip. The two cases have different frequency responses.
enum class TrackingMode { OneWay, TwoWay };

// Dimensionless response b as a function of x = omega * tau.
//
// One-way:  8/3 - 4/x^2 + 2 sin(2x)/x^3
// Two-way:  1 - cos(2x)/3 - (3 + cos(2x))/x^2 + 2 sin(2x)/x^3
//
// The closed forms cancel catastrophically as x -> 0 (the 4/x^2 terms cancel
// against the sine expansion down to O(x^2)), so below kSeriesSwitch the
// evaluation delegates to the Taylor branch. Even in x; NaN -> domain error.
double b_closed(TrackingMode mode, double x);

inline constexpr double kSeriesSwitch = 0.5;

// Taylor branch: sums n_terms terms of the small-x expansion. Both modes
// start at (8/15) x^2; the x^4 coefficients are -16/315 (one-way) and
// -58/315 (two-way). Accepts |x| <= 4 (alternating terms still shrink
// fast there); n_terms < 2 -> invalid_argument.
double b_series(TrackingMode mode, double x, int n_terms);

// Independent check: b as the average over the cosine gamma of the angle
// between the wavevector and the propagation direction, gamma uniform on
// [-1, 1], integrated adaptively to abs_tol. Never calls b_closed.
double b_angular_oracle(TrackingMode mode, double x, double abs_tol);

// Large-x value in the oscillation-averaged sense: 8/3 (one-way), 1
// (two-way). The two-way closed form keeps a persistent -cos(2x)/3 swing
// around this value; b_closed reports it as is, this is the average.
double b_high_freq(TrackingMode mode);

// Evaluation strategy selector, mostly for the CLI and benchmarks.
struct ResponseKernel {
  enum class Strategy { ClosedForm, Series, QuadratureOracle };

  static ResponseKernel closed_form(TrackingMode mode);
  static ResponseKernel series(TrackingMode mode, int order);            // order >= 2
  static ResponseKernel quadrature_oracle(TrackingMode mode, double abs_tol);  // abs_tol > 0

  double operator()(double x) const;

  TrackingMode mode;
  Strategy strategy;
  int series_terms = 12;
  double oracle_tol = 1e-12;
};

// Grid evaluation; embarrassingly parallel, output order fixed by input.
std::vector<double> b_closed_grid(TrackingMode mode, const std::vector<double>& xs, Exec exec);
std::vector<double> b_oracle_grid(TrackingMode mode, const std::vector<double>& xs, double abs_tol,
                                  Exec exec);

}  // namespace qlim::kernels
