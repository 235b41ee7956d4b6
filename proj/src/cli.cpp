#include "qlim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlim/curvature.hpp"
#include "qlim/kernels.hpp"
#include "qlim/limits.hpp"
#include "qlim/parallel.hpp"
#include "qlim/quadrature.hpp"
#include "qlim/simulate.hpp"
#include "qlim/svg.hpp"
#include "qlim/timedomain.hpp"
#include "qlim/units.hpp"

namespace qlim::cli {
namespace {

using nlohmann::json;

std::string fnum(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json qty(double value, const std::string& units) {
  return json{{"value", value}, {"units", units}};
}

std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced) {
  if (points < 1) throw std::invalid_argument("points must be >= 1");
  if (!(lo <= hi)) throw std::invalid_argument("grid minimum exceeds maximum");
  if (log_spaced && lo <= 0.0) throw std::invalid_argument("log-spaced grid needs a positive minimum");
  std::vector<double> xs(static_cast<std::size_t>(points));
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  if (log_spaced) {
    const double la = std::log(lo);
    const double lb = std::log(hi);
    for (int i = 0; i < points; ++i)
      xs[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  return xs;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

kernels::TrackingMode parse_mode(const std::string& s) {
  if (s == "one-way") return kernels::TrackingMode::OneWay;
  if (s == "two-way") return kernels::TrackingMode::TwoWay;
  throw std::invalid_argument("mode must be one-way or two-way");
}

Exec parse_exec(const std::string& s) { return s == "serial" ? Exec::Serial : Exec::Parallel; }

units::PhysicalConstants resolve_constants(const std::string& config_path) {
  std::string path = config_path;
  if (path.empty())
    if (const char* env = std::getenv("QLIM_CONFIG")) path = env;
  if (path.empty()) return units::codata2018();
  return units::load_constants(path);
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  json j;
  f >> j;
  return j;
}

std::vector<double> read_samples_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input: " + path);
  std::vector<double> xs;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str()) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw std::runtime_error("unparseable row in " + path + ": " + line);
    }
    first = false;
    xs.push_back(v);
  }
  if (xs.size() < 2) throw std::runtime_error("fewer than two samples in " + path);
  return xs;
}

// Spectrum factory shared by `simulate` (forward) and `psd` (target
// reconstruction from the sidecar); keeping it in one place is what makes
// the round trip honest.
std::function<double(double)> spectrum_for(const std::string& source, kernels::TrackingMode mode,
                                           double tau, double mass, double phi, double s0,
                                           const units::PhysicalConstants& k) {
  if (source == "white") {
    if (s0 < 0.0) throw std::invalid_argument("--s0 must be non-negative");
    return [s0](double) { return s0; };
  }
  if (source == "gql") {
    if (tau <= 0.0) throw std::invalid_argument("--tau must be positive");
    return [mode, tau, k](double w) { return limits::gql_spectrum(mode, tau, w, k); };
  }
  if (source == "sql") {
    if (mass <= 0.0) throw std::invalid_argument("--mass must be positive for source sql");
    return [mass, k](double w) { return w == 0.0 ? 0.0 : limits::sql_spectrum(mass, w, k); };
  }
  if (source == "vql") {
    if (mass <= 0.0) throw std::invalid_argument("--mass must be positive for source vql");
    if (phi <= 0.0) throw std::invalid_argument("--phi must be positive for source vql");
    return [mass, phi, k](double w) {
      return w == 0.0 ? 0.0 : limits::vql_spectrum(mass, phi, w, k);
    };
  }
  throw std::invalid_argument("unknown source: " + source);
}

// ---------------------------------------------------------------- kernel --

struct KernelArgs {
  std::string mode;
  double x_min = 0.01;
  double x_max = 100.0;
  int points = 50;
  bool log_spaced = false;
  double oracle_tol = 1e-12;
  std::string exec = "parallel";
  std::string format = "csv";
  std::string output;
};

void run_kernel(const KernelArgs& a, std::ostream& out) {
  const auto mode = parse_mode(a.mode);
  const auto xs = make_grid(a.x_min, a.x_max, a.points, a.log_spaced);
  const auto closed = kernels::b_closed_grid(mode, xs, parse_exec(a.exec));
  const auto oracle = kernels::b_oracle_grid(mode, xs, a.oracle_tol, parse_exec(a.exec));

  if (a.format == "svg") {
    svg::PlotSpec spec;
    spec.title = "response kernel, " + a.mode;
    spec.x_label = "x = omega tau";
    spec.y_label = "b(x)";
    spec.log_x = a.log_spaced;
    deliver(svg::render_plot(spec, {{"closed form", xs, closed}, {"angular quadrature", xs, oracle}}),
            a.output, out);
    return;
  }
  std::string csv = "x,b_closed,b_oracle,abs_diff\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    csv += fnum(xs[i]) + "," + fnum(closed[i]) + "," + fnum(oracle[i]) + "," +
           fnum(std::fabs(closed[i] - oracle[i])) + "\n";
  deliver(csv, a.output, out);
}

// ------------------------------------------------------------ timedomain --

struct TimedomainArgs {
  std::string mode;
  double tau = 1.0;
  double t_min = -3.0;
  double t_max = 3.0;
  int points = 601;
  std::string output;
};

json impulses_json(const timedomain::GeneralizedTimeFunction& f) {
  json arr = json::array();
  for (const auto& imp : f.impulses)
    arr.push_back(json{{"location", qty(imp.location, "natural")}, {"weight", qty(imp.weight, "natural")}});
  return arr;
}

void run_timedomain(const TimedomainArgs& a, std::ostream& out) {
  const auto mode = parse_mode(a.mode);
  const auto b = timedomain::b_time(mode, a.tau);
  const auto B = timedomain::B_time(mode, a.tau);
  const auto ts = make_grid(a.t_min, a.t_max, a.points, false);

  std::string csv = "t,b_regular,B\n";
  for (const double t : ts)
    csv += fnum(t) + "," + fnum(b.regular_at(t)) + "," + fnum(B.regular_at(t)) + "\n";
  write_file(a.output, csv);

  json side{{"units", "natural"},
            {"mode", a.mode},
            {"tau", qty(a.tau, "natural")},
            {"b_impulses", impulses_json(b)},
            {"B_impulses", impulses_json(B)}};
  write_file(a.output + ".impulses.json", side.dump(2) + "\n");
  out << "wrote " << a.output << " and " << a.output << ".impulses.json\n";
}

// ------------------------------------------------------- first-principles --

struct FirstPrinciplesArgs {
  std::string mode;
  double tau = 1.0;
  std::vector<double> omegas;
  double tol = 1e-8;
  std::string exec = "parallel";
  std::string output;
};

void run_first_principles(const FirstPrinciplesArgs& a, std::ostream& out) {
  const auto mode = parse_mode(a.mode);
  curvature::PathSpec path;
  path.mode = mode;
  path.tau = a.tau;

  json points = json::array();
  for (const double w : a.omegas) {
    const double value =
        curvature::response_first_principles(path, w, a.tol, units::natural(), parse_exec(a.exec));
    const double kernel_route = kernels::b_closed(mode, w * a.tau) / w;
    points.push_back(json{{"omega", qty(w, "natural")},
                          {"first_principles", qty(value, "natural")},
                          {"kernel_route", qty(kernel_route, "natural")},
                          {"abs_diff", qty(std::fabs(value - kernel_route), "natural")}});
  }
  json doc{{"units", "natural"}, {"mode", a.mode}, {"tau", qty(a.tau, "natural")}, {"points", points}};
  deliver(doc.dump(2) + "\n", a.output, out);
}

// ---------------------------------------------------------------- budget --

struct BudgetArgs {
  double mass = 0.0;
  double tau = 0.0;
  double phi = 1.0;
  std::string mode = "two-way";
  double omega_min = 1.0;
  double omega_max = 1e5;
  int points = 200;
  bool log_spaced = false;
  bool envelope = false;
  std::string units_system = "si";
  std::string format = "csv";
  std::string output;
  std::string config;
};

void run_budget(const BudgetArgs& a, std::ostream& out) {
  const auto k = a.units_system == "natural" ? units::natural() : resolve_constants(a.config);
  limits::MeasurementConfig cfg;
  cfg.mass = a.mass;
  cfg.tau = a.tau;
  cfg.phi = a.phi;
  cfg.mode = parse_mode(a.mode);
  const auto omegas = make_grid(a.omega_min, a.omega_max, a.points, a.log_spaced);
  const auto budget = limits::noise_budget(cfg, omegas, k, a.envelope);

  if (a.format == "svg") {
    // Two-series plot ceiling: show the two limits whose crossover the
    // budget exists to locate. The full table is the CSV output.
    std::vector<double> vql(budget.rows.size()), gql(budget.rows.size());
    for (std::size_t i = 0; i < budget.rows.size(); ++i) {
      vql[i] = budget.rows[i].vql;
      gql[i] = budget.rows[i].gql;
    }
    svg::PlotSpec spec;
    spec.title = "noise budget";
    spec.x_label = a.units_system == "natural" ? "omega" : "omega [rad/s]";
    spec.y_label = a.units_system == "natural" ? "spectral density" : "spectral density [m^2 s]";
    spec.log_x = a.log_spaced;
    spec.log_y = true;
    deliver(svg::render_plot(spec, {{"vql", omegas, vql}, {"gql", omegas, gql}}), a.output, out);
    return;
  }
  std::string csv = "omega,sql,vql,gql,dominant\n";
  for (const auto& row : budget.rows)
    csv += fnum(row.omega) + "," + fnum(row.sql) + "," + fnum(row.vql) + "," + fnum(row.gql) + "," +
           limits::to_string(row.dominant) + "\n";
  deliver(csv, a.output, out);
}

// ------------------------------------------------------------- crossover --

struct CrossoverArgs {
  double phi = 1.0;
  double b = 1.0;
  std::string output;
  std::string config;
};

void run_crossover(const CrossoverArgs& a, std::ostream& out) {
  const auto k = resolve_constants(a.config);
  const double m_star = limits::crossover_mass(a.phi, a.b, k);
  const auto planck = units::derive_planck_units(k);
  json doc{{"phi", qty(a.phi, "dimensionless")},
           {"b", qty(a.b, "dimensionless")},
           {"m_star_kg", qty(m_star, "kg")},
           {"m_star_over_planck", qty(m_star / planck.mass_p, "dimensionless")}};
  deliver(doc.dump(2) + "\n", a.output, out);
}

// -------------------------------------------------------------- simulate --

struct SimulateArgs {
  std::string source = "gql";
  std::string mode = "two-way";
  double tau = 1.0;
  double mass = 0.0;
  double phi = 1.0;
  double s0 = 1.0;
  std::size_t n = 1u << 20;
  double dt = 1.0;
  std::uint64_t seed = 12345;
  double omega_min = 0.0;
  std::string units_system = "natural";
  std::string output;
  std::string config;
};

void run_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto k = a.units_system == "natural" ? units::natural() : resolve_constants(a.config);
  simulate::SynthesisSpec spec;
  spec.spectrum = spectrum_for(a.source, parse_mode(a.mode), a.tau, a.mass, a.phi, a.s0, k);
  spec.n_samples = a.n;
  spec.dt = a.dt;
  spec.seed = a.seed;
  spec.omega_min = a.omega_min;
  const auto series = simulate::synthesize(spec);

  std::string csv = "sample\n";
  for (const double v : series.samples) csv += fnum(v) + "\n";
  write_file(a.output, csv);

  const std::string unit_tag = a.units_system == "natural" ? "natural" : "si";
  json meta{{"source", a.source},
            {"mode", a.mode},
            {"tau", qty(a.tau, unit_tag)},
            {"mass", qty(a.mass, unit_tag == "si" ? "kg" : "natural")},
            {"phi", qty(a.phi, "dimensionless")},
            {"s0", qty(a.s0, unit_tag)},
            {"n", a.n},
            {"dt", qty(a.dt, unit_tag == "si" ? "s" : "natural")},
            {"seed", a.seed},
            {"omega_min", qty(a.omega_min, unit_tag == "si" ? "rad/s" : "natural")},
            {"units", unit_tag},
            {"constants", json{{"hbar", k.hbar}, {"c", k.c}, {"G", k.G}}}};
  write_file(a.output + ".meta.json", meta.dump(2) + "\n");
  out << "wrote " << a.output << " and " << a.output << ".meta.json\n";
}

// ------------------------------------------------------------------- psd --

struct PsdArgs {
  std::string input;
  std::size_t segment = 4096;
  double overlap = 0.5;
  std::string window = "hann";
  std::string exec = "parallel";
  std::string format = "csv";
  std::string output;
};

void run_psd(const PsdArgs& a, std::ostream& out) {
  const auto samples = read_samples_csv(a.input);
  const json meta = read_json_file(a.input + ".meta.json");

  const units::PhysicalConstants k{meta.at("constants").at("hbar").get<double>(),
                                   meta.at("constants").at("c").get<double>(),
                                   meta.at("constants").at("G").get<double>()};
  const auto spectrum = spectrum_for(meta.at("source").get<std::string>(),
                                     parse_mode(meta.at("mode").get<std::string>()),
                                     meta.at("tau").at("value").get<double>(),
                                     meta.at("mass").at("value").get<double>(),
                                     meta.at("phi").at("value").get<double>(),
                                     meta.at("s0").at("value").get<double>(), k);
  const double omega_min = meta.at("omega_min").at("value").get<double>();

  simulate::TimeSeries series;
  series.samples = samples;
  series.dt = meta.at("dt").at("value").get<double>();
  const auto window = a.window == "rect" ? simulate::Window::Rectangular : simulate::Window::Hann;
  const auto est = simulate::estimate_psd(series, a.segment, a.overlap, window, parse_exec(a.exec));
  const auto band = simulate::chi2_band_3sigma(est.equivalent_dof);

  std::vector<double> target(est.omegas.size());
  for (std::size_t i = 0; i < est.omegas.size(); ++i) {
    const double w = est.omegas[i];
    // Below the synthesis cutoff the series carries no power by
    // construction, so the honest target there is zero.
    target[i] = w >= omega_min ? 0.5 * (spectrum(w) + spectrum(-w)) : 0.0;
  }

  if (a.format == "svg") {
    svg::PlotSpec spec;
    spec.title = "psd estimate vs target";
    spec.x_label = "omega";
    spec.y_label = "spectral density";
    spec.log_x = true;
    spec.log_y = true;
    deliver(svg::render_plot(spec, {{"estimate", est.omegas, est.values}, {"target", est.omegas, target}}),
            a.output, out);
    return;
  }
  std::string csv = "omega,estimate,target,lower3sigma,upper3sigma\n";
  for (std::size_t i = 0; i < est.omegas.size(); ++i)
    csv += fnum(est.omegas[i]) + "," + fnum(est.values[i]) + "," + fnum(target[i]) + "," +
           fnum(band.first * target[i]) + "," + fnum(band.second * target[i]) + "\n";
  deliver(csv, a.output, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum noise limits on interferometric length measurement"};
  app.name("qlim");
  app.require_subcommand(1);

  const auto mode_check = CLI::IsMember({"one-way", "two-way"});
  const auto exec_check = CLI::IsMember({"serial", "parallel"});

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "Tabulate the response kernel against its angular-average oracle");
  kernel->add_option("--mode", ka.mode, "one-way or two-way")->required()->check(mode_check);
  kernel->add_option("--x-min", ka.x_min, "smallest x = omega tau")->capture_default_str();
  kernel->add_option("--x-max", ka.x_max, "largest x")->capture_default_str();
  kernel->add_option("--points", ka.points, "grid size")->capture_default_str();
  kernel->add_flag("--log", ka.log_spaced, "log-spaced grid");
  kernel->add_option("--oracle-tol", ka.oracle_tol, "quadrature tolerance for the oracle column")->capture_default_str();
  kernel->add_option("--exec", ka.exec, "serial or parallel")->capture_default_str()->check(exec_check);
  kernel->add_option("--format", ka.format, "csv or svg")->capture_default_str()->check(CLI::IsMember({"csv", "svg"}));
  kernel->add_option("--output", ka.output, "file path (stdout when omitted)");

  TimedomainArgs ta;
  auto* td = app.add_subcommand("timedomain", "Tabulate the time-domain response and its running integral");
  td->add_option("--mode", ta.mode, "one-way or two-way")->required()->check(mode_check);
  td->add_option("--tau", ta.tau, "flight time (natural units)")->capture_default_str()->check(CLI::PositiveNumber);
  td->add_option("--t-min", ta.t_min, "grid start")->capture_default_str();
  td->add_option("--t-max", ta.t_max, "grid end")->capture_default_str();
  td->add_option("--points", ta.points, "grid size")->capture_default_str();
  td->add_option("--output", ta.output, "CSV path; impulses go to <output>.impulses.json")->required();

  FirstPrinciplesArgs fa;
  auto* fp = app.add_subcommand(
      "first-principles", "Length-noise spectrum from the curvature pipeline vs the kernel route");
  fp->add_option("--mode", fa.mode, "one-way or two-way")->required()->check(mode_check);
  fp->add_option("--tau", fa.tau, "flight time (natural units)")->capture_default_str()->check(CLI::PositiveNumber);
  fp->add_option("--omega", fa.omegas, "frequencies to evaluate (repeatable)")->required();
  fp->add_option("--tol", fa.tol, "absolute tolerance of the sphere quadrature")->capture_default_str();
  fp->add_option("--exec", fa.exec, "serial or parallel")->capture_default_str()->check(exec_check);
  fp->add_option("--output", fa.output, "file path (stdout when omitted)");

  BudgetArgs ba;
  auto* budget = app.add_subcommand("budget", "Noise budget table: sql/vql/gql with the dominant source tagged");
  budget->add_option("--mass", ba.mass, "probe mass")->required()->check(CLI::PositiveNumber);
  budget->add_option("--tau", ba.tau, "flight time")->required()->check(CLI::PositiveNumber);
  budget->add_option("--phi", ba.phi, "mirror response factor")->capture_default_str()->check(CLI::PositiveNumber);
  budget->add_option("--mode", ba.mode, "one-way or two-way")->capture_default_str()->check(mode_check);
  budget->add_option("--omega-min", ba.omega_min, "band start")->capture_default_str();
  budget->add_option("--omega-max", ba.omega_max, "band end")->capture_default_str();
  budget->add_option("--points", ba.points, "grid size")->capture_default_str();
  budget->add_flag("--log", ba.log_spaced, "log-spaced grid");
  budget->add_flag("--envelope", ba.envelope, "use the oscillation-averaged kernel value");
  budget->add_option("--units", ba.units_system, "si or natural")->capture_default_str()->check(CLI::IsMember({"si", "natural"}));
  budget->add_option("--format", ba.format, "csv or svg")->capture_default_str()->check(CLI::IsMember({"csv", "svg"}));
  budget->add_option("--output", ba.output, "file path (stdout when omitted)");

  CrossoverArgs ca;
  auto* crossover = app.add_subcommand("crossover", "Mass where the vacuum-pressure and gravitational limits meet");
  crossover->add_option("--phi", ca.phi, "mirror response factor")->capture_default_str()->check(CLI::PositiveNumber);
  crossover->add_option("--b", ca.b, "kernel value at the working point")->capture_default_str()->check(CLI::PositiveNumber);
  crossover->add_option("--output", ca.output, "file path (stdout when omitted)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Synthesize a time series with a chosen target spectrum");
  sim->add_option("--source", sa.source, "gql, sql, vql, or white")->capture_default_str()
      ->check(CLI::IsMember({"gql", "sql", "vql", "white"}));
  sim->add_option("--mode", sa.mode, "one-way or two-way (gql source)")->capture_default_str()->check(mode_check);
  sim->add_option("--tau", sa.tau, "flight time (gql source)")->capture_default_str();
  sim->add_option("--mass", sa.mass, "probe mass (sql/vql sources)");
  sim->add_option("--phi", sa.phi, "mirror response factor (vql source)")->capture_default_str();
  sim->add_option("--s0", sa.s0, "flat density level (white source)")->capture_default_str();
  sim->add_option("--n", sa.n, "sample count, power of two")->capture_default_str();
  sim->add_option("--dt", sa.dt, "sample spacing")->capture_default_str()->check(CLI::PositiveNumber);
  sim->add_option("--seed", sa.seed, "random seed")->capture_default_str();
  sim->add_option("--omega-min", sa.omega_min,
                  "infrared cutoff; bins below carry no power. Required: the low-frequency "
                  "divergence is physical and the cutoff is a modelling choice")
      ->required()
      ->check(CLI::PositiveNumber);
  sim->add_option("--units", sa.units_system, "natural or si")->capture_default_str()->check(CLI::IsMember({"si", "natural"}));
  sim->add_option("--output", sa.output, "samples CSV path; metadata goes to <output>.meta.json")->required();

  PsdArgs pa;
  auto* psd = app.add_subcommand("psd", "Averaged-periodogram estimate of a simulated series against its target");
  psd->add_option("--input", pa.input, "samples CSV produced by `simulate` (needs its .meta.json sidecar)")
      ->required();
  psd->add_option("--segment", pa.segment, "segment length, power of two")->capture_default_str();
  psd->add_option("--overlap", pa.overlap, "segment overlap fraction in [0, 1)")->capture_default_str();
  psd->add_option("--window", pa.window, "hann or rect")->capture_default_str()->check(CLI::IsMember({"hann", "rect"}));
  psd->add_option("--exec", pa.exec, "serial or parallel")->capture_default_str()->check(exec_check);
  psd->add_option("--format", pa.format, "csv or svg")->capture_default_str()->check(CLI::IsMember({"csv", "svg"}));
  psd->add_option("--output", pa.output, "file path (stdout when omitted)");

  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file overriding the physical constants (QLIM_CONFIG is the env fallback)");
  budget->add_option("--config", ba.config, "JSON file overriding the physical constants");
  crossover->add_option("--config", ca.config, "JSON file overriding the physical constants");
  sim->add_option("--config", sa.config, "JSON file overriding the physical constants");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    CLI::App* target = &app;
    auto parsed = app.get_subcommands();
    if (!parsed.empty()) target = parsed.front();
    out << target->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  // Subcommand-level --config wins over the global one, which wins over env.
  if (ba.config.empty()) ba.config = config_path;
  if (ca.config.empty()) ca.config = config_path;
  if (sa.config.empty()) sa.config = config_path;

  try {
    if (kernel->parsed()) run_kernel(ka, out);
    if (td->parsed()) run_timedomain(ta, out);
    if (fp->parsed()) run_first_principles(fa, out);
    if (budget->parsed()) run_budget(ba, out);
    if (crossover->parsed()) run_crossover(ca, out);
    if (sim->parsed()) run_simulate(sa, out);
    if (psd->parsed()) run_psd(pa, out);
  } catch (const qlim::numerical_error& e) {
    json diag{{"error", e.what()}, {"partial", e.partial}, {"err_estimate", e.err_estimate}};
    err << diag.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qlim::cli
