#include "qlim/units.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qlim::units {

PhysicalConstants codata2018() { return {1.054571817e-34, 299792458.0, 6.67430e-11}; }

PhysicalConstants natural() { return {1.0, 1.0, 1.0}; }

static void require_positive(const PhysicalConstants& k) {
  if (!(k.hbar > 0.0) || !(k.c > 0.0) || !(k.G > 0.0))
    throw std::domain_error("physical constants must be strictly positive");
}

PlanckUnits derive_planck_units(const PhysicalConstants& k) {
  require_positive(k);
  PlanckUnits p;
  p.mass_p = std::sqrt(k.hbar * k.c / k.G);
  p.length_p = std::sqrt(k.hbar * k.G / (k.c * k.c * k.c));
  p.time_p = p.length_p / k.c;
  p.freq_p = 1.0 / p.time_p;
  return p;
}

double compton_wavelength(double mass, const PhysicalConstants& k) {
  require_positive(k);
  if (!(mass > 0.0)) throw std::domain_error("compton_wavelength: mass must be > 0");
  return k.hbar / (mass * k.c);
}

PhysicalConstants load_constants(const std::string& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open constants file: " + json_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("bad constants file " + json_path + ": " + e.what());
  }
  PhysicalConstants k = codata2018();
  if (j.contains("hbar")) k.hbar = j.at("hbar").get<double>();
  if (j.contains("c")) k.c = j.at("c").get<double>();
  if (j.contains("G")) k.G = j.at("G").get<double>();
  require_positive(k);
  return k;
}

}  // namespace qlim::units
