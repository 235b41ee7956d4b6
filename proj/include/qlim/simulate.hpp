#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qlim/parallel.hpp"

namespace qlim::simulate {

// Target for spectral synthesis. `spectrum` is the two-sided density
// C(omega); synthesis draws from the symmetrized (C(w) + C(-w))/2, which is
// the part a classical real-valued sample path can carry. One-sided quantum
// spectra are handled by exactly this symmetrization -- the antisymmetric
// (commutator) part is not representable in sample paths and lives in the
// time-domain module instead.
struct SynthesisSpec {
  std::function<double(double)> spectrum;
  std::size_t n_samples = 0;   // power of two
  double dt = 1.0;             // s
  std::uint64_t seed = 0;
  double omega_min = 0.0;      // infrared cutoff, rad/s; bins below are zeroed.
                               // No default: the 1/omega divergence is real
                               // and the caller must own the cutoff choice.
};

struct TimeSeries {
  std::vector<double> samples;  // meters
  double dt = 1.0;
  std::uint64_t seed = 0;
};

// Frequency-domain synthesis: one complex Gaussian amplitude per positive
// bin with variance fixed by the symmetrized density, Hermitian symmetry,
// inverse FFT. The per-bin random draws are counter-based on (seed, bin), so
// the output is bit-reproducible and independent of evaluation order.
// Throws std::invalid_argument when n is not a power of two or the cutoff
// is not resolvable (dt * n * omega_min < 2 pi), std::domain_error when the
// symmetrized density is negative somewhere.
TimeSeries synthesize(const SynthesisSpec& spec);

enum class Window { Hann, Rectangular };

struct PsdEstimate {
  std::vector<double> omegas;  // bin centers, DC and Nyquist excluded
  std::vector<double> values;  // same convention as the synthesis target
  int segments = 0;
  double equivalent_dof = 0.0;  // chi-square dof per bin, overlap-corrected
};

// Averaged windowed periodogram. Normalized so that a synthesized white
// spectrum of density s0 is estimated as s0 (no one-sided doubling).
// equivalent_dof accounts for segment overlap correlation via the window's
// autocorrelation at whole-hop lags.
PsdEstimate estimate_psd(const TimeSeries& series, std::size_t segment_length,
                         double overlap = 0.5, Window window = Window::Hann,
                         Exec exec = Exec::Parallel);

// Equal-tail +-3 sigma multipliers for a chi^2_nu / nu ratio
// (Wilson-Hilferty cube approximation): estimate/target should fall inside
// [first, second] about 99.7% of the time.
std::pair<double, double> chi2_band_3sigma(double dof);

}  // namespace qlim::simulate
