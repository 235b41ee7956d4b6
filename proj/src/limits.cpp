#include "qlim/limits.hpp"

#include <cmath>
#include <stdexcept>

namespace qlim::limits {

std::string to_string(SourceTag tag) {
  switch (tag) {
    case SourceTag::SQL: return "sql";
    case SourceTag::VQL: return "vql";
    case SourceTag::GQL: return "gql";
    case SourceTag::ForceFF: return "force";
    case SourceTag::Background: return "background";
    case SourceTag::Total: return "total";
  }
  return "?";
}

static void check_mass(double m) {
  if (!(m > 0.0)) throw std::domain_error("mass must be > 0");
}

double sql_spectrum(double m, double omega, const units::PhysicalConstants& k) {
  check_mass(m);
  if (omega == 0.0) throw std::domain_error("sql_spectrum: omega = 0 is a pole");
  return k.hbar / (m * omega * omega);
}

double sql_variance_time(double m, double detection_time, const units::PhysicalConstants& k) {
  check_mass(m);
  if (!(detection_time > 0.0)) throw std::domain_error("sql_variance_time: need T > 0");
  return k.hbar / m * detection_time;
}

double sql_variance(double m, double omega, double delta_omega,
                    const units::PhysicalConstants& k) {
  if (!(omega > 0.0) || !(delta_omega > 0.0))
    throw std::domain_error("sql_variance: need omega > 0 and delta_omega > 0");
  // The band variance is the detection-time form evaluated at the
  // equivalent time; delegating keeps the identity exact, not approximate.
  return sql_variance_time(m, delta_omega / (2.0 * M_PI * omega * omega), k);
}

double vacuum_force_spectrum(double phi, double omega, const units::PhysicalConstants& k) {
  if (!(phi > 0.0)) throw std::domain_error("vacuum_force_spectrum: phi must be > 0");
  if (omega <= 0.0) return 0.0;
  return k.hbar * k.hbar / (3.0 * M_PI * k.c * k.c) * omega * omega * omega * phi;
}

double vql_spectrum(double m, double phi, double omega, const units::PhysicalConstants& k) {
  check_mass(m);
  if (!(phi > 0.0)) throw std::domain_error("vql_spectrum: phi must be > 0");
  if (omega == 0.0) throw std::domain_error("vql_spectrum: omega = 0 is a pole");
  if (omega < 0.0) return 0.0;
  const double lc = units::compton_wavelength(m, k);
  return phi / (3.0 * M_PI) * lc * lc / omega;
}

double gql_spectrum(TrackingMode mode, double tau, double omega,
                    const units::PhysicalConstants& k) {
  if (!(tau > 0.0)) throw std::domain_error("gql_spectrum: tau must be > 0");
  if (omega <= 0.0) return 0.0;
  const double lp = units::derive_planck_units(k).length_p;
  return lp * lp * kernels::b_closed(mode, omega * tau) / omega;
}

double crossover_mass(double phi, double b_value, const units::PhysicalConstants& k) {
  if (!(phi > 0.0) || !(b_value > 0.0))
    throw std::domain_error("crossover_mass: phi and b must be > 0");
  const double mp = units::derive_planck_units(k).mass_p;
  return mp * std::sqrt(phi / (3.0 * M_PI * b_value));
}

NoiseBudget noise_budget(const MeasurementConfig& config, const std::vector<double>& omegas,
                         const units::PhysicalConstants& k, bool envelope) {
  check_mass(config.mass);
  if (!(config.tau > 0.0) || !(config.phi > 0.0))
    throw std::domain_error("noise_budget: tau and phi must be > 0");

  const double lp = units::derive_planck_units(k).length_p;
  NoiseBudget budget;
  budget.rows.reserve(omegas.size());
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::domain_error("noise_budget: grid must be positive");
    BudgetRow row;
    row.omega = w;
    row.sql = sql_spectrum(config.mass, w, k);
    row.vql = vql_spectrum(config.mass, config.phi, w, k);
    row.gql = envelope ? lp * lp * kernels::b_high_freq(config.mode) / w
                       : gql_spectrum(config.mode, config.tau, w, k);
    row.dominant = SourceTag::SQL;
    double top = row.sql;
    if (row.vql > top) {
      top = row.vql;
      row.dominant = SourceTag::VQL;
    }
    if (row.gql > top) row.dominant = SourceTag::GQL;
    budget.rows.push_back(row);
  }
  return budget;
}

SpectrumGrid apply_isotropic_background(const std::function<double(double)>& S, TrackingMode mode,
                                        double tau, const std::vector<double>& omegas) {
  if (!(tau > 0.0)) throw std::domain_error("apply_isotropic_background: tau must be > 0");
  SpectrumGrid out;
  out.label = SourceTag::Background;
  out.omegas = omegas;
  out.values.reserve(omegas.size());
  for (double w : omegas) {
    const double s = S(w);
    if (s < 0.0) throw std::domain_error("apply_isotropic_background: negative background");
    out.values.push_back(s * kernels::b_closed(mode, w * tau));
  }
  return out;
}

}  // namespace qlim::limits
