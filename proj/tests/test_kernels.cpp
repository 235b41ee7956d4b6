#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qlim/kernels.hpp"
#include "qlim/quadrature.hpp"

using namespace qlim;
using kernels::TrackingMode;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  return xs;
}

}  // namespace

TEST_CASE("frozen reference values, 40-digit arithmetic") {
  // High-precision evaluations of the closed forms, fixed here so that any
  // later change to the evaluation path (series switch, refactoring) has to
  // reproduce them.
  struct Ref {
    TrackingMode mode;
    double x;
    double value;
  };
  const Ref refs[] = {
      {TrackingMode::OneWay, 0.1, 0.0053282567890975854919},
      {TrackingMode::TwoWay, 0.1, 0.0053149467178539293642},
      {TrackingMode::OneWay, 0.5, 0.13020242359301077311},
      {TrackingMode::TwoWay, 0.5, 0.1222257648310719977},
      {TrackingMode::OneWay, 1.0, 0.48526152031803005746},
      {TrackingMode::TwoWay, 1.0, 0.37345730238088657346},
      {TrackingMode::OneWay, M_PI, 2.2613819320973155809},
      {TrackingMode::TwoWay, M_PI, 0.26138193209731558089},
  };
  for (const auto& r : refs)
    CHECK(kernels::b_closed(r.mode, r.x) == doctest::Approx(r.value).epsilon(2e-14));
}

TEST_CASE("even in x, zero at zero") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay}) {
    CHECK(kernels::b_closed(mode, 0.0) == 0.0);
    for (double x : {1e-4, 0.3, 0.7, 2.0, 42.0})
      CHECK(kernels::b_closed(mode, -x) == kernels::b_closed(mode, x));
  }
}

TEST_CASE("positive away from the origin") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay})
    for (double x : log_grid(1e-3, 50.0, 200)) CHECK(kernels::b_closed(mode, x) > 0.0);
}

TEST_CASE("small-x behaviour: both modes rise as (8/15) x^2") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay}) {
    const double x = 1e-3;
    CHECK(kernels::b_closed(mode, x) / (x * x) ==
          doctest::Approx(8.0 / 15.0).epsilon(2e-6));
    // And the next order is already visible at x = 0.3.
    const double x2 = 0.3;
    CHECK(std::fabs(kernels::b_closed(mode, x2) / (x2 * x2) - 8.0 / 15.0) > 1e-3);
  }
}

TEST_CASE("series branch agrees with the closed form across the switch") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay}) {
    // On [0.3, 0.5] both the series and the cancellation-prone closed form
    // are healthy; they must agree tightly.
    for (double x = 0.30; x <= 0.50001; x += 0.01) {
      const double s = kernels::b_series(mode, x, 16);
      const double c = 8.0 / 3.0 - 4.0 / (x * x) + 2.0 * std::sin(2.0 * x) / (x * x * x);
      const double c2 = 1.0 - std::cos(2.0 * x) / 3.0 -
                        (3.0 + std::cos(2.0 * x)) / (x * x) +
                        2.0 * std::sin(2.0 * x) / (x * x * x);
      const double direct = mode == TrackingMode::OneWay ? c : c2;
      CHECK(s == doctest::Approx(direct).epsilon(5e-11));
    }
    // Continuity at the switch point itself.
    const double below = kernels::b_closed(mode, kernels::kSeriesSwitch * (1.0 - 1e-12));
    const double above = kernels::b_closed(mode, kernels::kSeriesSwitch * (1.0 + 1e-12));
    CHECK(below == doctest::Approx(above).epsilon(1e-11));
  }
}

TEST_CASE("oscillation-averaged large-x values") {
  // (1/pi) * integral of b over [1000, 1000 + pi]; frozen from 40-digit
  // arithmetic. One-way tends to 8/3, two-way to 1.
  const auto avg = [](TrackingMode mode) {
    return quadrature::integrate([mode](double x) { return kernels::b_closed(mode, x); }, 1000.0,
                                 1000.0 + M_PI, 1e-11)
               .value /
           M_PI;
  };
  const double a1 = avg(TrackingMode::OneWay);
  const double a2 = avg(TrackingMode::TwoWay);
  CHECK(a1 == doctest::Approx(2.66666267919).epsilon(1e-9));
  CHECK(a2 == doctest::Approx(0.99999701032).epsilon(1e-9));
  CHECK(kernels::b_high_freq(TrackingMode::OneWay) == 8.0 / 3.0);
  CHECK(kernels::b_high_freq(TrackingMode::TwoWay) == 1.0);
  CHECK(std::fabs(a1 - kernels::b_high_freq(TrackingMode::OneWay)) < 1e-2);
  CHECK(std::fabs(a2 - kernels::b_high_freq(TrackingMode::TwoWay)) < 1e-2);
}

TEST_CASE("angular-average oracle matches the closed form") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay})
    for (double x : log_grid(1e-2, 1e2, 50)) {
      const double closed = kernels::b_closed(mode, x);
      const double oracle = kernels::b_angular_oracle(mode, x, 1e-12);
      CHECK(std::fabs(closed - oracle) <= 1e-10);
    }
}

TEST_CASE("oracle handles the origin and negative x like the closed form") {
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay}) {
    CHECK(kernels::b_angular_oracle(mode, 0.0, 1e-12) == doctest::Approx(0.0).scale(1e-12));
    CHECK(kernels::b_angular_oracle(mode, -2.0, 1e-10) ==
          doctest::Approx(kernels::b_angular_oracle(mode, 2.0, 1e-10)).epsilon(1e-9));
  }
}

TEST_CASE("input validation") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(kernels::b_closed(TrackingMode::OneWay, nan), std::domain_error);
  CHECK_THROWS_AS(kernels::b_series(TrackingMode::OneWay, 0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(kernels::b_series(TrackingMode::OneWay, 5.0, 12), std::domain_error);
  CHECK_THROWS_AS(kernels::b_angular_oracle(TrackingMode::OneWay, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernels::b_angular_oracle(TrackingMode::OneWay, 1.0, -1e-9),
                  std::invalid_argument);
}

TEST_CASE("strategy dispatch") {
  const auto closed = kernels::ResponseKernel::closed_form(TrackingMode::TwoWay);
  const auto series = kernels::ResponseKernel::series(TrackingMode::TwoWay, 14);
  const auto oracle = kernels::ResponseKernel::quadrature_oracle(TrackingMode::TwoWay, 1e-11);
  for (double x : {0.05, 0.2, 0.45}) {
    CHECK(closed(x) == kernels::b_closed(TrackingMode::TwoWay, x));
    CHECK(series(x) == doctest::Approx(closed(x)).epsilon(1e-12));
    CHECK(oracle(x) == doctest::Approx(closed(x)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(kernels::ResponseKernel::series(TrackingMode::OneWay, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernels::ResponseKernel::quadrature_oracle(TrackingMode::OneWay, 0.0),
                  std::invalid_argument);
}

TEST_CASE("grid evaluation: serial and parallel agree exactly") {
  const auto xs = log_grid(1e-2, 30.0, 101);
  for (auto mode : {TrackingMode::OneWay, TrackingMode::TwoWay}) {
    const auto serial = kernels::b_closed_grid(mode, xs, Exec::Serial);
    const auto parallel = kernels::b_closed_grid(mode, xs, Exec::Parallel);
    REQUIRE(serial.size() == xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(serial[i] == parallel[i]);
      CHECK(serial[i] == kernels::b_closed(mode, xs[i]));
    }
    const auto os = kernels::b_oracle_grid(mode, xs, 1e-10, Exec::Serial);
    const auto op = kernels::b_oracle_grid(mode, xs, 1e-10, Exec::Parallel);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(os[i] == op[i]);
      CHECK(os[i] == doctest::Approx(serial[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("grid propagates integrand failures out of the parallel loop") {
  // NaN in the grid makes the oracle throw inside the loop; the exception
  // must surface, not crash or vanish.
  std::vector<double> xs = {1.0, std::numeric_limits<double>::quiet_NaN(), 2.0};
  CHECK_THROWS_AS(kernels::b_oracle_grid(TrackingMode::OneWay, xs, 1e-10, Exec::Parallel),
                  std::domain_error);
  CHECK_THROWS_AS(kernels::b_closed_grid(TrackingMode::OneWay, xs, Exec::Parallel),
                  std::domain_error);
}
