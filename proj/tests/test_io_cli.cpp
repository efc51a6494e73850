#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logheat/cli.hpp"
#include "logheat/io.hpp"
#include "logheat/version.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace logheat;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("logheat_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

cli::ordered_json base_config() {
  return cli::ordered_json::parse(R"({
    "equation": {"lambda": 1.0, "sign": "focusing"},
    "domain": {"x_min": -8.0, "x_max": 8.0, "n_points": 401},
    "initial_data": {"kind": "gaussian", "a0": 2.0, "b0": 1.0},
    "time": {"t_end": 0.5, "record_every": 0.1, "safety": 0.8, "scheme": "rk2"},
    "outputs": {"directory": "out", "snapshot_times": [0.0, 0.5]}
  })");
}

}  // namespace

TEST_CASE("format_g17 round-trips doubles exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0, 123456.789012345678}) {
    const std::string s = io::format_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("trajectory CSV round-trip, with and without the front column") {
  const fs::path dir = temp_dir("traj_csv");
  Trajectory traj;
  traj.times = {0.0, 0.1, 0.2};
  traj.l1 = {1.0, 0.9, 0.8};
  traj.l2 = {0.5, 0.45, 0.4};
  traj.linf = {0.3, 0.2, 1e-200};
  traj.energy = {2.0, 1.5, 1.2};
  traj.psi_hat = {0.0, -0.1, -0.2};
  traj.front = {std::nan(""), 1.25, 1.5};

  io::write_trajectory_csv(dir / "with_front.csv", traj, true);
  const Trajectory back = io::read_trajectory_csv(dir / "with_front.csv");
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.times[i] == traj.times[i]);
    CHECK(back.l1[i] == traj.l1[i]);
    CHECK(back.linf[i] == traj.linf[i]);
    CHECK(back.psi_hat[i] == traj.psi_hat[i]);
  }
  CHECK(std::isnan(back.front[0]));
  CHECK(back.front[1] == 1.25);

  io::write_trajectory_csv(dir / "plain.csv", traj, false);
  std::ifstream in(dir / "plain.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,l1,l2,linf,energy,psi_hat");
  CHECK(io::read_trajectory_csv(dir / "plain.csv").front.empty());
}

TEST_CASE("snapshot CSV round-trip preserves the grid and values") {
  const fs::path dir = temp_dir("snap_csv");
  const Grid1D grid(-2.0, 2.0, 41);
  Array v(41);
  for (int i = 0; i < 41; ++i) v(i) = std::abs(std::sin(0.3 * i));
  const Field f(grid, v);
  io::write_snapshot_csv(dir / "snap.csv", f);
  const Field back = io::read_snapshot_csv(dir / "snap.csv");
  CHECK(back.grid == grid);
  CHECK((back.values - f.values).abs().maxCoeff() == 0.0);

  std::ifstream in(dir / "snap.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,u");
}

TEST_CASE("config validation rejects unknown keys and names bad fields") {
  auto cfg = base_config();
  cfg["time"]["tend"] = 1.0;  // typo
  CHECK_THROWS_WITH_AS(cli::parse_simulate_config(cfg),
                       doctest::Contains("unknown key 'tend' in 'time'"), cli::ConfigError);

  cfg = base_config();
  cfg["equation"]["lambda"] = -1.0;
  CHECK_THROWS_WITH_AS(cli::parse_simulate_config(cfg),
                       doctest::Contains("equation.lambda"), cli::ConfigError);

  cfg = base_config();
  cfg["initial_data"] = {{"kind", "gaussian"}, {"a0", 2.0}};
  CHECK_THROWS_WITH_AS(cli::parse_simulate_config(cfg), doctest::Contains("b0"),
                       cli::ConfigError);

  cfg = base_config();
  cfg["initial_data"]["kind"] = "sombrero";
  CHECK_THROWS_WITH_AS(cli::parse_simulate_config(cfg), doctest::Contains("sombrero"),
                       cli::ConfigError);

  cfg = base_config();
  cfg["domain"] = {{"alpha", -3.0}, {"beta", 3.0}, {"n_points", 61}};
  CHECK(cli::parse_simulate_config(cfg).grid->x_min == -3.0);
}

TEST_CASE("simulate produces a complete summary and the declared artifacts") {
  const fs::path dir = temp_dir("simulate");
  auto cfg = base_config();
  cfg["outputs"]["directory"] = (dir / "run").string();
  const auto setup = cli::parse_simulate_config(cfg);
  const auto outcome = cli::simulate(setup);
  cli::write_run_outputs(setup.out_dir, outcome);

  CHECK(fs::exists(dir / "run" / "trajectory.csv"));
  CHECK(fs::exists(dir / "run" / "summary.json"));
  CHECK(fs::exists(dir / "run" / "snapshots" / "snapshot_000.csv"));
  CHECK(fs::exists(dir / "run" / "snapshots" / "snapshot_001.csv"));

  const auto summary = cli::ordered_json::parse(io::read_text_file(dir / "run" / "summary.json"));
  CHECK(summary.at("tool").get<std::string>() == kToolName);
  CHECK(summary.at("version").get<std::string>() == kVersion);
  CHECK(summary.at("config").at("resolved").at("lambda").get<double>() == 1.0);
  CHECK(summary.at("stop_reason").get<std::string>() == "HorizonReached");
  CHECK(summary.contains("rate_fit"));
  CHECK(summary.at("classification").contains("class"));
  CHECK(summary.at("snapshots").size() == 2);
}

TEST_CASE("repeated simulate runs are byte-identical") {
  const fs::path dir = temp_dir("determinism");
  auto cfg = base_config();
  cfg["outputs"]["directory"] = (dir / "run").string();
  const auto setup = cli::parse_simulate_config(cfg);

  cli::write_run_outputs(setup.out_dir, cli::simulate(setup));
  const std::string traj1 = io::read_text_file(dir / "run" / "trajectory.csv");
  const std::string summary1 = io::read_text_file(dir / "run" / "summary.json");
  const std::string snap1 = io::read_text_file(dir / "run" / "snapshots" / "snapshot_001.csv");

  cli::write_run_outputs(setup.out_dir, cli::simulate(setup));
  CHECK(io::read_text_file(dir / "run" / "trajectory.csv") == traj1);
  CHECK(io::read_text_file(dir / "run" / "summary.json") == summary1);
  CHECK(io::read_text_file(dir / "run" / "snapshots" / "snapshot_001.csv") == snap1);
}

TEST_CASE("log-mode simulate handles growth horizons the linear mode cannot") {
  const fs::path dir = temp_dir("logmode");
  auto cfg = base_config();
  cfg["initial_data"] = {{"kind", "scaled_steady"}, {"factor", 1.5}};
  cfg["time"]["t_end"] = 4.0;
  cfg["solver"] = {{"mode", "log"}, {"amplitude_cap", 1e308}};  // 1e308 = uncapped
  cfg["outputs"] = {{"directory", (dir / "run").string()}};
  const auto setup = cli::parse_simulate_config(cfg);
  const auto outcome = cli::simulate(setup);
  // at t = 4, ln sup = ln(1.5) e^8 + 1/2 is far beyond linear range: the
  // recorded linear sup saturates to inf while psi_hat stays exact
  CHECK(outcome.trajectory.times.back() == Approx(4.0));
  CHECK(std::isinf(outcome.trajectory.linf.back()));
  const double expected_psi_hat = std::log(1.5) + 0.5 * std::exp(-8.0);
  CHECK(outcome.trajectory.psi_hat.back() == Approx(expected_psi_hat).epsilon(1e-5));

  // log mode refuses data that touch zero
  auto bad = base_config();
  bad["initial_data"] = {{"kind", "compact_bump"},
                         {"half_support", 3.0},
                         {"ramp_width", 1.5},
                         {"amplitude", 1.0}};
  bad["solver"] = {{"mode", "log"}};
  CHECK_THROWS_AS(cli::simulate(cli::parse_simulate_config(bad)), cli::ConfigError);
}

TEST_CASE("check reports serialize with the documented fields") {
  bounds::CheckReport rep;
  rep.bound_name = "demo";
  rep.passed = false;
  rep.worst_margin = -0.25;
  rep.worst_time = 1.5;
  rep.worst_x = 0.75;
  rep.first_violation_time = 1.0;
  rep.violations = 3;
  const auto j = io::check_report_json(rep);
  CHECK(j.at("bound_name").get<std::string>() == "demo");
  CHECK_FALSE(j.at("passed").get<bool>());
  CHECK(j.at("worst_margin").get<double>() == -0.25);
  CHECK(j.at("worst_time").get<double>() == 1.5);
  CHECK(j.at("worst_x").get<double>() == 0.75);
  CHECK(j.at("violations").get<int>() == 3);
}
