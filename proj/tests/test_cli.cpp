#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlim/cli.hpp"
#include "qlim/kernels.hpp"
#include "qlim/limits.hpp"
#include "qlim/units.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = qlim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

double cell_num(const std::string& cell) { return std::strtod(cell.c_str(), nullptr); }

void write_config(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << body;
}

}  // namespace

TEST_CASE("top-level help lists every subcommand") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Subcommands:") != std::string::npos);
  for (const char* name :
       {"kernel", "timedomain", "first-principles", "budget", "crossover", "simulate", "psd"})
    CHECK(r.out.find(name) != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("subcommand help shows its own options") {
  const auto r = run_cli({"kernel", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--oracle-tol") != std::string::npos);
  CHECK(r.out.find("--x-min") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);                                    // no subcommand
  CHECK(run_cli({"kernel"}).code == 2);                            // missing --mode
  CHECK(run_cli({"kernel", "--mode", "sideways"}).code == 2);      // bad enum
  CHECK(run_cli({"kernel", "--mode", "two-way", "--bogus"}).code == 2);
  CHECK(run_cli({"timedomain", "--mode", "one-way"}).code == 2);   // missing --output
  CHECK(run_cli({"simulate", "--output", "/tmp/x.csv"}).code == 2);  // missing --omega-min
}

TEST_CASE("library errors exit with 2 and a message") {
  // Power-of-two requirement is enforced by the synthesis library; the CLI
  // turns the exception into a plain error line.
  const auto r = run_cli({"simulate", "--source", "white", "--n", "1000", "--omega-min", "0.1",
                          "--output", tmp_path("qlim_cli_badn.csv")});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error:", 0) == 0);
}

TEST_CASE("kernel table matches its oracle column") {
  const auto r = run_cli({"kernel", "--mode", "two-way", "--log"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 51);  // header + default 50 points
  CHECK(lines[0] == "x,b_closed,b_oracle,abs_diff");
  double max_diff = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_cells(lines[i]);
    REQUIRE(cells.size() == 4);
    CHECK(cell_num(cells[1]) > 0.0);
    max_diff = std::max(max_diff, cell_num(cells[3]));
  }
  CHECK(max_diff <= 1e-10);
  const auto first = split_cells(lines[1]);
  const auto last = split_cells(lines[50]);
  CHECK(cell_num(first[0]) == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(cell_num(last[0]) == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("kernel svg output renders a plot") {
  const auto r = run_cli({"kernel", "--mode", "one-way", "--points", "10", "--format", "svg"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("polyline") != std::string::npos);
  CHECK(r.out.find("</svg>") != std::string::npos);
}

TEST_CASE("timedomain writes the table and the impulse sidecar") {
  const std::string path = tmp_path("qlim_cli_td.csv");
  const auto r = run_cli({"timedomain", "--mode", "two-way", "--tau", "1.5", "--output", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("wrote") != std::string::npos);

  const auto lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 602);  // header + default 601 points
  CHECK(lines[0] == "t,b_regular,B");

  const json side = json::parse(slurp(path + ".impulses.json"));
  CHECK(side.at("mode") == "two-way");
  CHECK(side.at("tau").at("value") == 1.5);
  const auto& b_imp = side.at("b_impulses");
  REQUIRE(b_imp.size() == 3);
  CHECK(b_imp[0].at("location").at("value") == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(b_imp[1].at("location").at("value") == 0.0);
  CHECK(b_imp[2].at("location").at("value") == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(b_imp[1].at("weight").at("value") == 1.0);
  CHECK(b_imp[2].at("weight").at("value") == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
  for (const auto& imp : b_imp) {
    CHECK(imp.at("location").contains("units"));
    CHECK(imp.at("weight").contains("units"));
  }
  // The running integral jumps at the impulses but carries none of its own.
  CHECK(side.at("B_impulses").empty());

  std::remove(path.c_str());
  std::remove((path + ".impulses.json").c_str());
}

TEST_CASE("first-principles pipeline agrees with the kernel route") {
  const auto r = run_cli({"first-principles", "--mode", "two-way", "--omega", "2.0",
                          "--tol", "1e-7"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("units") == "natural");
  REQUIRE(doc.at("points").size() == 1);
  const auto& p = doc.at("points")[0];
  CHECK(p.at("omega").at("value") == 2.0);
  const double expected = qlim::kernels::b_closed(qlim::kernels::TrackingMode::TwoWay, 2.0) / 2.0;
  CHECK(p.at("kernel_route").at("value").get<double>() ==
        doctest::Approx(expected).epsilon(1e-15));
  CHECK(p.at("abs_diff").at("value").get<double>() < 1e-6);
  for (const char* field : {"omega", "first_principles", "kernel_route", "abs_diff"})
    CHECK(p.at(field).contains("units"));
}

TEST_CASE("crossover reports the dimensionless mass ratio") {
  const auto r = run_cli({"crossover"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  // phi = b = 1: m*/m_P = 1/sqrt(3 pi).
  CHECK(doc.at("m_star_over_planck").at("value").get<double>() ==
        doctest::Approx(0.32573500793527995).epsilon(1e-12));
  const double mp = qlim::units::derive_planck_units(qlim::units::codata2018()).mass_p;
  CHECK(doc.at("m_star_kg").at("value").get<double>() ==
        doctest::Approx(mp * 0.32573500793527995).epsilon(1e-10));
  for (auto& [key, value] : doc.items()) {
    CHECK(value.contains("value"));
    CHECK(value.contains("units"));
  }
}

TEST_CASE("constants come from the flag, then the environment, then defaults") {
  const std::string cfg_a = tmp_path("qlim_cli_cfg_a.json");
  const std::string cfg_b = tmp_path("qlim_cli_cfg_b.json");
  write_config(cfg_a, "{\"hbar\": 1.055e-34, \"c\": 3.0e8, \"G\": 6.674e-11}\n");
  write_config(cfg_b, "{\"G\": 2.6696e-10}\n");  // partial override, 4x the usual G

  const double expect_a =
      qlim::limits::crossover_mass(1.0, 1.0, qlim::units::load_constants(cfg_a));
  const double expect_b =
      qlim::limits::crossover_mass(1.0, 1.0, qlim::units::load_constants(cfg_b));

  const auto flag = run_cli({"crossover", "--config", cfg_a});
  REQUIRE(flag.code == 0);
  CHECK(json::parse(flag.out).at("m_star_kg").at("value").get<double>() ==
        doctest::Approx(expect_a).epsilon(1e-14));

  ::setenv("QLIM_CONFIG", cfg_a.c_str(), 1);
  const auto env = run_cli({"crossover"});
  const auto flag_wins = run_cli({"crossover", "--config", cfg_b});
  ::unsetenv("QLIM_CONFIG");

  REQUIRE(env.code == 0);
  CHECK(json::parse(env.out).at("m_star_kg").at("value").get<double>() ==
        doctest::Approx(expect_a).epsilon(1e-14));
  REQUIRE(flag_wins.code == 0);
  CHECK(json::parse(flag_wins.out).at("m_star_kg").at("value").get<double>() ==
        doctest::Approx(expect_b).epsilon(1e-14));

  // A missing config file is a plain error, not a silent fallback.
  const auto missing = run_cli({"crossover", "--config", tmp_path("qlim_no_such_cfg.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("error:", 0) == 0);

  std::remove(cfg_a.c_str());
  std::remove(cfg_b.c_str());
}

TEST_CASE("budget table tags a dominant source per row") {
  const auto r = run_cli({"budget", "--mass", "1e-6", "--tau", "1e-9", "--omega-min", "1e3",
                          "--omega-max", "1e9", "--points", "40", "--log"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 41);
  CHECK(lines[0] == "omega,sql,vql,gql,dominant");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_cells(lines[i]);
    REQUIRE(cells.size() == 5);
    for (int c = 0; c < 4; ++c) CHECK(cell_num(cells[static_cast<std::size_t>(c)]) > 0.0);
    const bool tagged = cells[4] == "sql" || cells[4] == "vql" || cells[4] == "gql";
    CHECK(tagged);
  }

  const auto svg = run_cli({"budget", "--mass", "1e-6", "--tau", "1e-9", "--points", "20",
                            "--log", "--format", "svg"});
  REQUIRE(svg.code == 0);
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(svg.out.find("polyline") != std::string::npos);
}

TEST_CASE("simulate and psd round-trip through files") {
  const std::string path = tmp_path("qlim_cli_sim.csv");
  const auto sim = run_cli({"simulate", "--source", "white", "--s0", "2", "--n", "4096",
                            "--dt", "1", "--seed", "7", "--omega-min", "0.1",
                            "--output", path});
  REQUIRE(sim.code == 0);

  const auto samples = split_lines(slurp(path));
  REQUIRE(samples.size() == 4097);
  CHECK(samples[0] == "sample");

  const json meta = json::parse(slurp(path + ".meta.json"));
  CHECK(meta.at("source") == "white");
  CHECK(meta.at("n") == 4096);
  CHECK(meta.at("seed") == 7);
  CHECK(meta.at("units") == "natural");
  CHECK(meta.at("constants").at("hbar") == 1.0);

  const auto psd = run_cli({"psd", "--input", path, "--segment", "512"});
  REQUIRE(psd.code == 0);
  const auto lines = split_lines(psd.out);
  REQUIRE(lines.size() == 256);  // header + 512/2 - 1 interior bins
  CHECK(lines[0] == "omega,estimate,target,lower3sigma,upper3sigma");
  std::size_t live = 0, inside = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split_cells(lines[i]);
    REQUIRE(cells.size() == 5);
    const double target = cell_num(cells[2]);
    CHECK((target == 0.0 || target == 2.0));  // flat density above the cutoff
    if (target == 0.0) continue;
    ++live;
    const double est = cell_num(cells[1]);
    if (est >= cell_num(cells[3]) && est <= cell_num(cells[4])) ++inside;
  }
  REQUIRE(live > 200);
  CHECK(static_cast<double>(inside) >= 0.9 * static_cast<double>(live));

  std::remove(path.c_str());
  std::remove((path + ".meta.json").c_str());
}

TEST_CASE("quadrature failure surfaces as structured diagnostics with exit 1") {
  const auto r = run_cli({"kernel", "--mode", "two-way", "--points", "3", "--x-min", "1",
                          "--x-max", "2", "--oracle-tol", "1e-300"});
  CHECK(r.code == 1);
  const json diag = json::parse(r.err);
  CHECK(diag.at("error").is_string());
  CHECK(std::isfinite(diag.at("partial").get<double>()));
  CHECK(diag.at("err_estimate").get<double>() > 0.0);
}
