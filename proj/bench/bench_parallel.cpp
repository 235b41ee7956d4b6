// Timing harness for the parallel code paths against their serial twins.
// Reports wall times only: whether parallel wins depends on the machine
// (thread count, FFT sizes), so nothing here asserts a speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#include "qlim/curvature.hpp"
#include "qlim/kernels.hpp"
#include "qlim/parallel.hpp"
#include "qlim/simulate.hpp"

namespace {

using qlim::Exec;

template <typename F>
double time_run(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_s * 1e3, parallel_s * 1e3,
              parallel_s > 0 ? serial_s / parallel_s : 0.0);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", qlim::concurrency());
  std::printf("%-28s %13s %13s %9s\n", "workload", "serial", "parallel", "ratio");

  {
    std::vector<double> xs(240);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = 0.01 + 0.5 * static_cast<double>(i);
    const auto mode = qlim::kernels::TrackingMode::TwoWay;
    double s = time_run([&] { qlim::kernels::b_oracle_grid(mode, xs, 1e-11, Exec::Serial); });
    double p = time_run([&] { qlim::kernels::b_oracle_grid(mode, xs, 1e-11, Exec::Parallel); });
    report("kernel oracle grid (240)", s, p);
  }

  {
    qlim::curvature::PathSpec path;
    path.mode = qlim::kernels::TrackingMode::TwoWay;
    path.tau = 1.0;
    double s = time_run([&] {
      for (double w : {0.5, 2.0, 8.0})
        qlim::curvature::response_first_principles(path, w, 1e-7, qlim::units::natural(), Exec::Serial);
    });
    double p = time_run([&] {
      for (double w : {0.5, 2.0, 8.0})
        qlim::curvature::response_first_principles(path, w, 1e-7, qlim::units::natural(), Exec::Parallel);
    });
    report("sphere quadrature (3 freqs)", s, p);
  }

  {
    qlim::simulate::SynthesisSpec spec;
    spec.spectrum = [](double) { return 1.0; };
    spec.n_samples = 1u << 18;
    spec.dt = 1.0;
    spec.seed = 7;
    spec.omega_min = 1e-3;
    const auto series = qlim::simulate::synthesize(spec);
    double s = time_run([&] {
      qlim::simulate::estimate_psd(series, 4096, 0.5, qlim::simulate::Window::Hann, Exec::Serial);
    });
    double p = time_run([&] {
      qlim::simulate::estimate_psd(series, 4096, 0.5, qlim::simulate::Window::Hann, Exec::Parallel);
    });
    report("welch psd (2^18, 4096)", s, p);
  }

  return 0;
}
