#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlim/kernels.hpp"
#include "qlim/units.hpp"

namespace qlim::limits {

using kernels::TrackingMode;

struct Bandwidth {
  double omega_center = 0.0;  // rad/s
  double delta_omega = 0.0;   // rad/s
};

// Everything a budget evaluation needs: end-point mass, light flight time,
// mirror response factor phi, tracking mode, and the analysis band.
struct MeasurementConfig {
  double mass = 0.0;  // kg
  double tau = 0.0;   // s
  double phi = 1.0;   // dimensionless mirror response, order 1
  TrackingMode mode = TrackingMode::TwoWay;
  Bandwidth bandwidth;
};

enum class SourceTag { SQL, VQL, GQL, ForceFF, Background, Total };

std::string to_string(SourceTag tag);

// One-sided spectrum samples (positive frequencies only).
struct SpectrumGrid {
  std::vector<double> omegas;  // strictly increasing, rad/s
  std::vector<double> values;  // m^2 s (displacement) or N^2 s (force)
  SourceTag label = SourceTag::Total;
};

// Phase/intensity noise floor of a free end-point probe: hbar / (m omega^2).
// omega = 0 is a genuine pole -> domain error.
double sql_spectrum(double m, double omega, const units::PhysicalConstants& k);

// Band-integrated variance at omega over bandwidth delta_omega, and its
// detection-time form; the two are the same number under
// T = delta_omega / (2 pi omega^2), and the implementation delegates so the
// identity holds bit-exactly.
double sql_variance(double m, double omega, double delta_omega, const units::PhysicalConstants& k);
double sql_variance_time(double m, double detection_time, const units::PhysicalConstants& k);

// Vacuum radiation-pressure force spectrum on the mirror:
// (hbar^2 / 3 pi c^2) omega^3 phi for omega > 0, zero otherwise.
double vacuum_force_spectrum(double phi, double omega, const units::PhysicalConstants& k);

// Displacement noise from that force: (phi / 3 pi) lambda_C^2 / omega for
// omega > 0. Computed through the Compton wavelength; the force-spectrum
// route divided by (m omega^2)^2 must agree and is kept as a test identity.
double vql_spectrum(double m, double phi, double omega, const units::PhysicalConstants& k);

// Gravitational vacuum limit: l_P^2 b(omega tau) / omega for omega > 0.
// At omega <= 0 the one-sided convention gives 0 (the kernel's omega^2 zero
// beats the 1/omega pole, so 0 is also the omega -> 0 limit).
double gql_spectrum(TrackingMode mode, double tau, double omega,
                    const units::PhysicalConstants& k);

// Mass at which the vacuum-pressure and gravitational limits cross at
// matched frequency: m_P sqrt(phi / (3 pi b)).
double crossover_mass(double phi, double b_value, const units::PhysicalConstants& k);

struct BudgetRow {
  double omega;
  double sql;
  double vql;
  double gql;
  SourceTag dominant;
};

struct NoiseBudget {
  std::vector<BudgetRow> rows;
};

// Per-frequency table of the three limits with the largest tagged. With
// envelope = true the kernel's oscillation is replaced by its large-x
// average value; by default the instantaneous closed form is used.
NoiseBudget noise_budget(const MeasurementConfig& config, const std::vector<double>& omegas,
                         const units::PhysicalConstants& k, bool envelope = false);

// Response to an arbitrary isotropic background: the vacuum weight
// l_P^2/omega is replaced by S(omega) while the kernel factor b(omega tau)
// stays. S must be non-negative on the grid.
SpectrumGrid apply_isotropic_background(const std::function<double(double)>& S, TrackingMode mode,
                                        double tau, const std::vector<double>& omegas);

}  // namespace qlim::limits
