#include "qlim/simulate.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace qlim::simulate {

namespace {

bool power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double to_unit(std::uint64_t x) {
  const double u = static_cast<double>(x >> 11) * 0x1.0p-53;
  return u > 0.0 ? u : 0x1.0p-53;  // keep log() finite
}

// Two standard normals from the (seed, counter) pair alone: every bin's
// draw is independent of evaluation order, which is what makes the series
// reproducible byte for byte.
void gaussian_pair(std::uint64_t seed, std::uint64_t counter, double& z0, double& z1) {
  std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * (counter + 1));
  const double u1 = to_unit(splitmix64(state));
  const double u2 = to_unit(splitmix64(state));
  const double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(2.0 * M_PI * u2);
  z1 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace

TimeSeries synthesize(const SynthesisSpec& spec) {
  if (!spec.spectrum) throw std::invalid_argument("synthesize: no target spectrum");
  if (!power_of_two(spec.n_samples))
    throw std::invalid_argument("synthesize: n_samples must be a power of two");
  if (!(spec.dt > 0.0)) throw std::invalid_argument("synthesize: dt must be > 0");
  if (!(spec.omega_min > 0.0))
    throw std::invalid_argument("synthesize: omega_min must be > 0 (the infrared cutoff is not optional)");
  if (spec.dt * static_cast<double>(spec.n_samples) * spec.omega_min < 2.0 * M_PI)
    throw std::invalid_argument("synthesize: omega_min below the frequency resolution");

  const std::size_t n = spec.n_samples;
  const std::size_t nf = n / 2 + 1;
  const double domega = 2.0 * M_PI / (spec.dt * static_cast<double>(n));

  fftw_complex* bins = fftw_alloc_complex(nf);
  double* out = fftw_alloc_real(n);
  if (!bins || !out) throw std::bad_alloc();

  bins[0][0] = bins[0][1] = 0.0;
  for (std::size_t k = 1; k < nf; ++k) {
    const double omega = domega * static_cast<double>(k);
    if (omega < spec.omega_min) {
      bins[k][0] = bins[k][1] = 0.0;
      continue;
    }
    const double sym = 0.5 * (spec.spectrum(omega) + spec.spectrum(-omega));
    if (sym < 0.0) {
      fftw_free(bins);
      fftw_free(out);
      throw std::domain_error("synthesize: negative symmetrized density");
    }
    // E|X_k|^2 = n * S_sym / dt reproduces the density under the DFT pair.
    const double var = static_cast<double>(n) * sym / spec.dt;
    double z0, z1;
    gaussian_pair(spec.seed, k, z0, z1);
    if (k == n / 2) {  // Nyquist bin is its own mirror: real-valued
      bins[k][0] = std::sqrt(var) * z0;
      bins[k][1] = 0.0;
    } else {
      const double amp = std::sqrt(0.5 * var);
      bins[k][0] = amp * z0;
      bins[k][1] = amp * z1;
    }
  }

  fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), bins, out, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  TimeSeries series;
  series.dt = spec.dt;
  series.seed = spec.seed;
  series.samples.resize(n);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) series.samples[t] = out[t] * norm;

  fftw_free(bins);
  fftw_free(out);
  return series;
}

PsdEstimate estimate_psd(const TimeSeries& series, std::size_t segment_length, double overlap,
                         Window window, Exec exec) {
  const std::size_t n = series.samples.size();
  if (!power_of_two(segment_length) || segment_length > n)
    throw std::invalid_argument("estimate_psd: segment_length must be a power of two <= n");
  if (!(overlap >= 0.0) || !(overlap < 1.0))
    throw std::invalid_argument("estimate_psd: overlap must be in [0, 1)");
  if (!(series.dt > 0.0)) throw std::invalid_argument("estimate_psd: dt must be > 0");

  const std::size_t L = segment_length;
  std::size_t hop = static_cast<std::size_t>(std::lround((1.0 - overlap) * static_cast<double>(L)));
  if (hop == 0) hop = 1;
  const std::size_t n_seg = (n - L) / hop + 1;

  std::vector<double> w(L);
  for (std::size_t t = 0; t < L; ++t)
    w[t] = window == Window::Hann
               ? 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(t) / static_cast<double>(L)))
               : 1.0;
  double wss = 0.0;
  for (double v : w) wss += v * v;

  const std::size_t nf = L / 2 + 1;
  // One plan, per-segment buffers: fftw_execute_dft_r2c on fresh arrays is
  // thread-safe, the planner is not.
  double* probe_in = fftw_alloc_real(L);
  fftw_complex* probe_out = fftw_alloc_complex(nf);
  fftw_plan plan =
      fftw_plan_dft_r2c_1d(static_cast<int>(L), probe_in, probe_out, FFTW_ESTIMATE);

  // Per-segment periodograms, summed afterwards in index order so the
  // average is deterministic under any thread count.
  std::vector<std::vector<double>> seg_power(n_seg);
  std::exception_ptr failure = nullptr;
  const long n_seg_l = static_cast<long>(n_seg);
#pragma omp parallel for if (exec == Exec::Parallel) schedule(static)
  for (long is = 0; is < n_seg_l; ++is) {
    try {
      double* in = fftw_alloc_real(L);
      fftw_complex* bins = fftw_alloc_complex(nf);
      if (!in || !bins) throw std::bad_alloc();
      const std::size_t off = static_cast<std::size_t>(is) * hop;
      for (std::size_t t = 0; t < L; ++t) in[t] = w[t] * series.samples[off + t];
      fftw_execute_dft_r2c(plan, in, bins);
      auto& power = seg_power[static_cast<std::size_t>(is)];
      power.resize(nf);
      const double scale = series.dt / wss;
      for (std::size_t k = 0; k < nf; ++k)
        power[k] = scale * (bins[k][0] * bins[k][0] + bins[k][1] * bins[k][1]);
      fftw_free(in);
      fftw_free(bins);
    } catch (...) {
#pragma omp critical(qlim_psd)
      if (!failure) failure = std::current_exception();
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(probe_in);
  fftw_free(probe_out);
  if (failure) std::rethrow_exception(failure);

  PsdEstimate est;
  est.segments = static_cast<int>(n_seg);
  const double domega = 2.0 * M_PI / (series.dt * static_cast<double>(L));
  est.omegas.reserve(nf - 2);
  est.values.reserve(nf - 2);
  for (std::size_t k = 1; k + 1 < nf; ++k) {  // skip DC and Nyquist
    double mean = 0.0;
    for (std::size_t is = 0; is < n_seg; ++is) mean += seg_power[is][k];
    mean /= static_cast<double>(n_seg);
    est.omegas.push_back(domega * static_cast<double>(k));
    est.values.push_back(mean);
  }

  // Equivalent chi-square dof: 2K shrunk by the correlation between
  // overlapping windows, c_m = (sum_t w_t w_{t+m hop} / sum_t w_t^2)^2.
  double corr = 0.0;
  for (std::size_t m = 1; m < n_seg; ++m) {
    const std::size_t shift = m * hop;
    if (shift >= L) break;
    double dot = 0.0;
    for (std::size_t t = 0; t + shift < L; ++t) dot += w[t] * w[t + shift];
    const double c = (dot / wss) * (dot / wss);
    corr += (static_cast<double>(n_seg - m) / static_cast<double>(n_seg)) * c;
  }
  est.equivalent_dof = 2.0 * static_cast<double>(n_seg) / (1.0 + 2.0 * corr);
  return est;
}

std::pair<double, double> chi2_band_3sigma(double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("chi2_band_3sigma: dof must be > 0");
  const double h = 2.0 / (9.0 * dof);
  const double lo = 1.0 - h - 3.0 * std::sqrt(h);
  const double hi = 1.0 - h + 3.0 * std::sqrt(h);
  const auto cube = [](double v) { return v * v * v; };
  return {std::max(0.0, cube(lo)), cube(hi)};
}

}  // namespace qlim::simulate
