#pragma once

#include <string>

namespace qlim::units {

// Fundamental constants in SI. Every dimensional computation receives one of
// these; nothing downstream hard-codes a constant.
struct PhysicalConstants {
  double hbar;  // J s
  double c;     // m / s
  double G;     // m^3 / (kg s^2)
};

// CODATA 2018 recommended values.
PhysicalConstants codata2018();

// hbar = c = G = 1: makes every formula in the library dimensionless.
PhysicalConstants natural();

struct PlanckUnits {
  double mass_p;    // kg
  double length_p;  // m
  double time_p;    // s
  double freq_p;    // rad / s
};

// mass_p = sqrt(hbar c / G), length_p = sqrt(hbar G / c^3),
// time_p = length_p / c, freq_p = 1 / time_p.
// Throws std::domain_error unless all constants are strictly positive.
PlanckUnits derive_planck_units(const PhysicalConstants& k);

// Reduced Compton wavelength hbar / (m c). Throws std::domain_error for m <= 0.
double compton_wavelength(double mass, const PhysicalConstants& k);

enum class UnitSystem { SI, Natural };

// Scale conversions between SI quantities and their Planck-unit counterparts.
// to_natural divides by the matching Planck unit, from_natural multiplies
// back, so the round trip is exact up to floating-point rounding.
class Converter {
 public:
  explicit Converter(const PhysicalConstants& k) : p_(derive_planck_units(k)) {}

  double mass_to_natural(double kg) const { return kg / p_.mass_p; }
  double mass_from_natural(double m) const { return m * p_.mass_p; }
  double length_to_natural(double meters) const { return meters / p_.length_p; }
  double length_from_natural(double l) const { return l * p_.length_p; }
  double time_to_natural(double seconds) const { return seconds / p_.time_p; }
  double time_from_natural(double t) const { return t * p_.time_p; }
  double freq_to_natural(double rad_per_s) const { return rad_per_s / p_.freq_p; }
  double freq_from_natural(double w) const { return w * p_.freq_p; }

  // Displacement spectral density, m^2 s <-> dimensionless.
  double psd_to_natural(double si) const { return si / (p_.length_p * p_.length_p * p_.time_p); }
  double psd_from_natural(double x) const { return x * p_.length_p * p_.length_p * p_.time_p; }

  const PlanckUnits& planck() const { return p_; }

 private:
  PlanckUnits p_;
};

// Reads {"hbar": ..., "c": ..., "G": ...} from a JSON file; missing keys fall
// back to CODATA 2018. Throws std::runtime_error if the file cannot be read
// or parsed, std::domain_error if a value is not strictly positive.
PhysicalConstants load_constants(const std::string& json_path);

}  // namespace qlim::units
