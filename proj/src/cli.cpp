#include "logheat/cli.hpp"

#include "logheat/analysis.hpp"
#include "logheat/bounds.hpp"
#include "logheat/experiments.hpp"
#include "logheat/io.hpp"
#include "logheat/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace logheat::cli {

namespace fs = std::filesystem;

namespace {

void check_keys(const ordered_json& obj, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + key + "' in '" + ctx + "'");
    }
  }
}

const ordered_json& require_block(const ordered_json& config, const char* name) {
  if (!config.contains(name)) throw ConfigError(std::string("missing block '") + name + "'");
  const auto& block = config.at(name);
  if (!block.is_object()) throw ConfigError(std::string("'") + name + "' must be an object");
  return block;
}

double number_at(const ordered_json& obj, const std::string& ctx, const char* key) {
  if (!obj.contains(key)) throw ConfigError(ctx + "." + key + " is required");
  if (!obj.at(key).is_number()) throw ConfigError(ctx + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

double number_or(const ordered_json& obj, const std::string& ctx, const char* key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError(ctx + "." + key + " must be a number");
  return obj.at(key).get<double>();
}

double positive_at(const ordered_json& obj, const std::string& ctx, const char* key) {
  const double v = number_at(obj, ctx, key);
  if (!(v > 0.0)) {
    throw ConfigError(ctx + "." + key + " must be > 0, got " + io::format_g17(v));
  }
  return v;
}

int integer_at(const ordered_json& obj, const std::string& ctx, const char* key) {
  if (!obj.contains(key)) throw ConfigError(ctx + "." + key + " is required");
  if (!obj.at(key).is_number_integer()) {
    throw ConfigError(ctx + "." + key + " must be an integer");
  }
  return obj.at(key).get<int>();
}

std::string string_or(const ordered_json& obj, const std::string& ctx, const char* key,
                      const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw ConfigError(ctx + "." + key + " must be a string");
  return obj.at(key).get<std::string>();
}

Params parse_equation(const ordered_json& config, Sign default_sign = Sign::Focusing) {
  const auto& eq = require_block(config, "equation");
  check_keys(eq, "equation", {"lambda", "sign"});
  const double lambda = positive_at(eq, "equation", "lambda");
  const std::string sign = string_or(eq, "equation", "sign",
                                     default_sign == Sign::Focusing ? "focusing" : "defocusing");
  if (sign != "focusing" && sign != "defocusing") {
    throw ConfigError("equation.sign must be 'focusing' or 'defocusing', got '" + sign + "'");
  }
  return Params(lambda, sign == "focusing" ? Sign::Focusing : Sign::Defocusing);
}

Grid1D parse_domain(const ordered_json& config) {
  const auto& dom = require_block(config, "domain");
  check_keys(dom, "domain", {"x_min", "x_max", "alpha", "beta", "n_points"});
  const bool greek = dom.contains("alpha") || dom.contains("beta");
  const char* lo_key = greek ? "alpha" : "x_min";
  const char* hi_key = greek ? "beta" : "x_max";
  const double lo = number_at(dom, "domain", lo_key);
  const double hi = number_at(dom, "domain", hi_key);
  const int n = integer_at(dom, "domain", "n_points");
  if (!(lo < hi)) {
    throw ConfigError(std::string("domain: ") + lo_key + " must be < " + hi_key);
  }
  if (n < 3) throw ConfigError("domain.n_points must be >= 3");
  return Grid1D(lo, hi, n);
}

std::function<double(double)> parse_initial_data(const ordered_json& config,
                                                 const Params& params) {
  const auto& init = require_block(config, "initial_data");
  const std::string kind = [&] {
    if (!init.contains("kind")) throw ConfigError("initial_data.kind is required");
    if (!init.at("kind").is_string()) throw ConfigError("initial_data.kind must be a string");
    return init.at("kind").get<std::string>();
  }();
  try {
    if (kind == "gaussian") {
      check_keys(init, "initial_data", {"kind", "a0", "b0"});
      return solver::gaussian_datum(positive_at(init, "initial_data", "a0"),
                                    positive_at(init, "initial_data", "b0"));
    }
    if (kind == "scaled_steady") {
      check_keys(init, "initial_data", {"kind", "factor"});
      return solver::scaled_steady_datum(params.lambda,
                                         number_at(init, "initial_data", "factor"));
    }
    if (kind == "heavy_tail") {
      check_keys(init, "initial_data", {"kind", "m_infinity", "alpha"});
      return solver::heavy_tail_datum(positive_at(init, "initial_data", "m_infinity"),
                                      positive_at(init, "initial_data", "alpha"));
    }
    if (kind == "compact_bump") {
      check_keys(init, "initial_data", {"kind", "half_support", "ramp_width", "amplitude"});
      return solver::compact_bump_datum(positive_at(init, "initial_data", "half_support"),
                                        positive_at(init, "initial_data", "ramp_width"),
                                        positive_at(init, "initial_data", "amplitude"));
    }
    if (kind == "plateau") {
      check_keys(init, "initial_data", {"kind", "half_support", "ramp_width", "K"});
      return solver::plateau_datum(positive_at(init, "initial_data", "half_support"),
                                   positive_at(init, "initial_data", "ramp_width"),
                                   positive_at(init, "initial_data", "K"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial_data: ") + e.what());
  }
  throw ConfigError("initial_data.kind '" + kind + "' is not one of gaussian, scaled_steady, "
                    "heavy_tail, compact_bump, plateau");
}

void parse_time(const ordered_json& config, solver::SolverConfig& scfg, double& t_end) {
  const auto& time = require_block(config, "time");
  check_keys(time, "time", {"t_end", "record_every", "safety", "scheme"});
  t_end = positive_at(time, "time", "t_end");
  scfg.record_every = number_or(time, "time", "record_every", 0.1);
  if (!(scfg.record_every > 0.0)) throw ConfigError("time.record_every must be > 0");
  scfg.safety = number_or(time, "time", "safety", 0.8);
  if (!(scfg.safety > 0.0 && scfg.safety <= 1.0)) {
    throw ConfigError("time.safety must lie in (0, 1]");
  }
  const std::string scheme = string_or(time, "time", "scheme", "rk2");
  if (scheme == "rk2") {
    scfg.time_scheme = solver::TimeScheme::ExplicitRK2;
  } else if (scheme == "euler") {
    scfg.time_scheme = solver::TimeScheme::ExplicitEuler;
  } else {
    throw ConfigError("time.scheme must be 'rk2' or 'euler', got '" + scheme + "'");
  }
}

fs::path parse_outputs(const ordered_json& config, std::vector<double>& snapshot_times) {
  if (!config.contains("outputs")) return "out";
  const auto& outs = config.at("outputs");
  check_keys(outs, "outputs", {"directory", "snapshot_times"});
  if (outs.contains("snapshot_times")) {
    if (!outs.at("snapshot_times").is_array()) {
      throw ConfigError("outputs.snapshot_times must be an array of numbers");
    }
    for (const auto& v : outs.at("snapshot_times")) {
      if (!v.is_number()) throw ConfigError("outputs.snapshot_times must be an array of numbers");
      snapshot_times.push_back(v.get<double>());
    }
  }
  return string_or(outs, "outputs", "directory", "out");
}

ordered_json resolved_echo(const RunSetup& setup, const ordered_json& raw) {
  ordered_json j = raw;
  j["resolved"] = {
      {"lambda", setup.params.lambda},
      {"sign", to_string(setup.params.sign)},
      {"x_min", setup.grid->x_min},
      {"x_max", setup.grid->x_max},
      {"n_points", setup.grid->n_points},
      {"dx", setup.grid->dx()},
      {"t_end", setup.t_end},
      {"record_every", setup.solver_config.record_every},
      {"safety", setup.solver_config.safety},
      {"scheme",
       setup.solver_config.time_scheme == solver::TimeScheme::ExplicitRK2 ? "rk2" : "euler"},
      {"amplitude_cap", setup.solver_config.amplitude_cap},
      {"floor", setup.solver_config.floor},
      {"mode", setup.log_mode ? "log" : "linear"},
      {"out_dir", setup.out_dir.string()},
  };
  return j;
}

}  // namespace

RunSetup parse_simulate_config(const ordered_json& config) {
  if (!config.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(config, "config",
             {"equation", "domain", "initial_data", "time", "outputs", "solver", "checks"});
  RunSetup setup;
  setup.params = parse_equation(config);
  setup.grid = parse_domain(config);
  setup.datum = parse_initial_data(config, setup.params);
  setup.solver_config.params = setup.params;
  parse_time(config, setup.solver_config, setup.t_end);
  setup.out_dir = parse_outputs(config, setup.solver_config.snapshot_times);

  if (config.contains("solver")) {
    const auto& s = config.at("solver");
    check_keys(s, "solver", {"amplitude_cap", "floor", "front_level", "mode",
                             "snapshot_every_record"});
    setup.solver_config.amplitude_cap = number_or(s, "solver", "amplitude_cap", 1e100);
    if (!(setup.solver_config.amplitude_cap > 1.0)) {
      throw ConfigError("solver.amplitude_cap must be > 1");
    }
    setup.solver_config.floor = number_or(s, "solver", "floor", 0.0);
    if (setup.solver_config.floor < 0.0) throw ConfigError("solver.floor must be >= 0");
    if (s.contains("front_level")) {
      setup.solver_config.front_level = positive_at(s, "solver", "front_level");
    }
    const std::string mode = string_or(s, "solver", "mode", "linear");
    if (mode == "log") {
      setup.log_mode = true;
    } else if (mode != "linear") {
      throw ConfigError("solver.mode must be 'linear' or 'log', got '" + mode + "'");
    }
    if (s.contains("snapshot_every_record")) {
      if (!s.at("snapshot_every_record").is_boolean()) {
        throw ConfigError("solver.snapshot_every_record must be a boolean");
      }
      setup.solver_config.snapshot_every_record = s.at("snapshot_every_record").get<bool>();
    }
  }
  setup.resolved = resolved_echo(setup, config);
  return setup;
}

SimulateOutcome simulate(const RunSetup& setup) {
  SimulateOutcome out;
  const Field u0 = solver::sample(setup.datum, *setup.grid);
  if (setup.log_mode) {
    if ((u0.values <= 0.0).any()) {
      throw ConfigError("solver.mode 'log' requires a strictly positive initial datum");
    }
    LogField w0(*setup.grid, u0.values.log());
    out.trajectory = solver::solve_log_domain(w0, setup.solver_config, setup.t_end);
  } else {
    out.trajectory = solver::solve(u0, setup.solver_config, setup.t_end);
  }
  out.front_tracked = setup.solver_config.front_level.has_value();

  const Trajectory& traj = out.trajectory;
  const auto fit = analysis::fit_rate(traj, setup.params.lambda);
  const auto cls = analysis::classify_trajectory(traj, setup.params.lambda);

  ordered_json summary;
  summary["tool"] = kToolName;
  summary["version"] = kVersion;
  summary["config"] = setup.resolved;
  summary["stop_reason"] = to_string(traj.stop_reason);
  summary["steps"] = traj.steps;
  summary["clamp_count"] = traj.clamp_count;
  summary["final"] = {{"t", traj.times.back()},   {"l1", traj.l1.back()},
                      {"l2", traj.l2.back()},     {"linf", traj.linf.back()},
                      {"energy", traj.energy.back()}, {"psi_hat", traj.psi_hat.back()}};
  summary["rate_fit"] = io::rate_fit_json(fit);
  summary["classification"] = io::regime_report_json(cls);
  ordered_json snaps = ordered_json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[48];
    std::snprintf(name, sizeof(name), "snapshots/snapshot_%03zu.csv", i);
    snaps.push_back({{"time", traj.snapshots[i].t}, {"file", name}});
  }
  summary["snapshots"] = std::move(snaps);
  out.summary = std::move(summary);
  return out;
}

void write_run_outputs(const fs::path& dir, const SimulateOutcome& outcome) {
  fs::create_directories(dir);
  io::write_trajectory_csv(dir / "trajectory.csv", outcome.trajectory, outcome.front_tracked);
  if (!outcome.trajectory.snapshots.empty()) {
    fs::create_directories(dir / "snapshots");
    for (std::size_t i = 0; i < outcome.trajectory.snapshots.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", i);
      io::write_snapshot_csv(dir / "snapshots" / name, outcome.trajectory.snapshots[i].field);
    }
  }
  io::write_text_file(dir / "summary.json", outcome.summary.dump(2) + "\n");
}

namespace {

ordered_json load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

fs::path effective_out(const RunSetup& setup, const std::optional<std::string>& out_override) {
  return out_override ? fs::path(*out_override) : setup.out_dir;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const solver::IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

int finish_experiment(const experiments::ExperimentReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir / report.name);
  io::write_text_file(out_dir / report.name / "report.json", report.to_json().dump(2) + "\n");
  for (const auto& [run_name, traj] : report.run_trajectories) {
    io::write_trajectory_csv(out_dir / report.name / (run_name + ".csv"), traj,
                             !traj.front.empty());
  }
  for (const auto& flag : report.flags) {
    std::cout << (flag.passed ? "[pass] " : "[FAIL] ") << report.name << ": " << flag.name;
    if (!flag.detail.empty()) std::cout << " (" << flag.detail << ")";
    std::cout << "\n";
  }
  return report.passed() ? kOk : kExperimentFailed;
}

}  // namespace

int run_simulate(const fs::path& config_path, const std::optional<std::string>& out_override) {
  return guarded([&] {
    RunSetup setup = parse_simulate_config(load_config(config_path));
    if (out_override) {
      setup.out_dir = *out_override;
      setup.resolved["resolved"]["out_dir"] = *out_override;
    }
    const SimulateOutcome outcome = simulate(setup);
    write_run_outputs(setup.out_dir, outcome);
    std::cout << outcome.summary["classification"]["class"].get<std::string>() << " ("
              << outcome.summary["stop_reason"].get<std::string>() << ", "
              << outcome.trajectory.steps << " steps)\n";
    return kOk;
  });
}

int run_classify(double a0, double b0, double lambda) {
  return guarded([&] {
    const auto rep = model::classify_gaussian(model::GaussianParams(a0, b0), lambda);
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["a0"] = a0;
    j["b0"] = b0;
    j["lambda"] = lambda;
    j["psi_infinity"] = *rep.psi_infinity;
    j["class"] = to_string(rep.regime);
    j["tol"] = rep.tol;
    std::cout << j.dump(2) << "\n";
    return kOk;
  });
}

int run_threshold(const fs::path& config_path, const std::optional<std::string>& out_override) {
  return guarded([&] {
    const ordered_json config = load_config(config_path);
    check_keys(config, "config",
               {"equation", "domain", "bump", "plateau", "time", "bisection", "outputs"});
    experiments::ThresholdConfig cfg;
    cfg.lambda = parse_equation(config).lambda;
    cfg.grid = parse_domain(config);
    if (config.contains("bump")) {
      const auto& b = config.at("bump");
      check_keys(b, "bump", {"half_support", "ramp_width"});
      cfg.bump_half_support = number_or(b, "bump", "half_support", cfg.bump_half_support);
      cfg.bump_ramp = number_or(b, "bump", "ramp_width", cfg.bump_ramp);
    }
    if (config.contains("plateau")) {
      const auto& p = config.at("plateau");
      check_keys(p, "plateau", {"half_support", "ramp_width"});
      cfg.plateau_half_support =
          number_or(p, "plateau", "half_support", cfg.plateau_half_support);
      cfg.plateau_ramp = number_or(p, "plateau", "ramp_width", cfg.plateau_ramp);
    }
    solver::SolverConfig time_probe;
    double t_end = cfg.t_end;
    if (config.contains("time")) {
      parse_time(config, time_probe, t_end);
      cfg.record_every = time_probe.record_every;
      cfg.safety = time_probe.safety;
    }
    cfg.t_end = t_end;
    if (config.contains("bisection")) {
      const auto& b = config.at("bisection");
      check_keys(b, "bisection", {"max_probes", "target_rel_width"});
      if (b.contains("max_probes")) cfg.max_probes = integer_at(b, "bisection", "max_probes");
      cfg.target_rel_width =
          number_or(b, "bisection", "target_rel_width", cfg.target_rel_width);
    }
    std::vector<double> unused_snaps;
    fs::path out_dir = parse_outputs(config, unused_snaps);
    if (out_override) out_dir = *out_override;

    const auto report = experiments::threshold_bisection(cfg);
    return finish_experiment(report, out_dir);
  });
}

int run_verify(const fs::path& config_path, const std::optional<std::string>& out_override,
               const std::optional<fs::path>& run_dir) {
  return guarded([&] {
    const ordered_json config = load_config(config_path);
    RunSetup setup = parse_simulate_config(config);
    if (!config.contains("checks")) {
      throw ConfigError("verify needs a 'checks' block");
    }
    const auto& checks = config.at("checks");
    check_keys(checks, "checks", {"ode_envelope", "gaussian_envelope", "smalldata"});

    Trajectory traj;
    const Field u0 = solver::sample(setup.datum, *setup.grid);
    if (run_dir) {
      traj = io::read_trajectory_csv(*run_dir / "trajectory.csv");
      // pick up any snapshots listed in the run's summary
      const fs::path summary_path = *run_dir / "summary.json";
      if (fs::exists(summary_path)) {
        const auto summary = ordered_json::parse(io::read_text_file(summary_path));
        if (summary.contains("snapshots")) {
          for (const auto& s : summary.at("snapshots")) {
            traj.snapshots.push_back(
                {s.at("time").get<double>(),
                 io::read_snapshot_csv(*run_dir / s.at("file").get<std::string>())});
          }
        }
      }
    } else {
      setup.solver_config.snapshot_every_record = true;  // pointwise checks need profiles
      traj = solver::solve(u0, setup.solver_config, setup.t_end);
    }

    std::vector<bounds::CheckReport> reports;
    const double lambda = setup.params.lambda;
    if (checks.contains("ode_envelope")) {
      const auto& c = checks.at("ode_envelope");
      check_keys(c, "checks.ode_envelope", {"n0", "rel_tol"});
      const double n0 = number_or(c, "checks.ode_envelope", "n0",
                                  std::max(analysis::norm_linf(u0), 1.0));
      reports.push_back(bounds::ode_envelope_check(
          traj, n0, lambda, number_or(c, "checks.ode_envelope", "rel_tol", 1e-6)));
    }
    if (checks.contains("gaussian_envelope")) {
      const auto& c = checks.at("gaussian_envelope");
      check_keys(c, "checks.gaussian_envelope", {"side", "a0", "b0", "R", "t_min", "rel_tol"});
      const std::string side = string_or(c, "checks.gaussian_envelope", "side", "upper_decay");
      if (side != "upper_decay" && side != "lower_growth") {
        throw ConfigError("checks.gaussian_envelope.side must be 'upper_decay' or 'lower_growth'");
      }
      model::GaussianParams g(positive_at(c, "checks.gaussian_envelope", "a0"),
                              positive_at(c, "checks.gaussian_envelope", "b0"));
      reports.push_back(bounds::gaussian_envelope_check(
          traj, g, lambda,
          side == "upper_decay" ? bounds::EnvelopeSide::UpperDecay
                                : bounds::EnvelopeSide::LowerGrowth,
          number_or(c, "checks.gaussian_envelope", "R", 0.0),
          number_or(c, "checks.gaussian_envelope", "rel_tol", 1e-6),
          number_or(c, "checks.gaussian_envelope", "t_min", 0.0)));
    }
    if (checks.contains("smalldata")) {
      const auto& c = checks.at("smalldata");
      check_keys(c, "checks.smalldata", {"rel_tol"});
      const auto rep = model::small_data_criterion(analysis::norm_linf(u0),
                                                   analysis::norm_l1(u0), lambda);
      if (!rep.criterion_holds) {
        throw ConfigError("checks.smalldata: the datum does not satisfy the decay criterion "
                          "(psi_star = " + io::format_g17(rep.psi_star) + ")");
      }
      reports.push_back(bounds::smalldata_supersolution_check(
          traj, rep, lambda, number_or(c, "checks.smalldata", "rel_tol", 1e-6)));
    }
    if (reports.empty()) throw ConfigError("verify: 'checks' block enables no checks");

    ordered_json out;
    out["tool"] = kToolName;
    out["version"] = kVersion;
    out["config"] = setup.resolved;
    ordered_json arr = ordered_json::array();
    bool all_passed = true;
    for (const auto& r : reports) {
      arr.push_back(io::check_report_json(r));
      all_passed = all_passed && r.passed;
      std::cout << (r.passed ? "[pass] " : "[FAIL] ") << r.bound_name
                << " (worst margin " << io::format_g17(r.worst_margin) << ")\n";
    }
    out["checks"] = std::move(arr);
    out["passed"] = all_passed;
    fs::path out_dir = effective_out(setup, out_override);
    fs::create_directories(out_dir);
    io::write_text_file(out_dir / "verify_report.json", out.dump(2) + "\n");
    return all_passed ? kOk : kExperimentFailed;
  });
}

int run_sweep(const fs::path& config_path, const std::optional<std::string>& out_override,
              int jobs) {
  return guarded([&] {
    const ordered_json config = load_config(config_path);
    check_keys(config, "config", {"equation", "domain", "time", "sweep", "outputs"});
    experiments::DichotomySweepConfig cfg;
    cfg.lambda = parse_equation(config).lambda;
    cfg.grid = parse_domain(config);
    solver::SolverConfig time_probe;
    double t_end = cfg.t_end;
    if (config.contains("time")) {
      parse_time(config, time_probe, t_end);
      cfg.record_every = time_probe.record_every;
      cfg.safety = time_probe.safety;
    }
    cfg.t_end = t_end;
    if (config.contains("sweep")) {
      const auto& s = config.at("sweep");
      check_keys(s, "sweep", {"eps_list", "psi_tol"});
      if (s.contains("eps_list")) {
        if (!s.at("eps_list").is_array()) throw ConfigError("sweep.eps_list must be an array");
        cfg.eps_list.clear();
        for (const auto& v : s.at("eps_list")) {
          if (!v.is_number()) throw ConfigError("sweep.eps_list must contain numbers");
          cfg.eps_list.push_back(v.get<double>());
        }
      }
      cfg.psi_tol = number_or(s, "sweep", "psi_tol", cfg.psi_tol);
    }
    cfg.jobs = std::max(1, jobs);
    std::vector<double> unused;
    fs::path out_dir = parse_outputs(config, unused);
    if (out_override) out_dir = *out_override;
    return finish_experiment(experiments::dichotomy_sweep(cfg), out_dir);
  });
}

int run_front(const fs::path& config_path, const std::optional<std::string>& out_override) {
  return guarded([&] {
    const ordered_json config = load_config(config_path);
    check_keys(config, "config", {"equation", "domain", "bump", "time", "front", "outputs"});
    const Params params = parse_equation(config, Sign::Defocusing);
    if (params.sign != Sign::Defocusing) {
      throw ConfigError("front: equation.sign must be 'defocusing'");
    }
    experiments::KppConfig cfg;
    cfg.lambda = params.lambda;
    cfg.grid = parse_domain(config);
    if (config.contains("bump")) {
      const auto& b = config.at("bump");
      check_keys(b, "bump", {"half_support", "ramp_width", "amplitude"});
      cfg.bump_half_support = number_or(b, "bump", "half_support", cfg.bump_half_support);
      cfg.bump_ramp = number_or(b, "bump", "ramp_width", cfg.bump_ramp);
      cfg.amplitude = number_or(b, "bump", "amplitude", cfg.amplitude);
    }
    solver::SolverConfig time_probe;
    double t_end = cfg.t_end;
    if (config.contains("time")) {
      parse_time(config, time_probe, t_end);
      cfg.record_every = time_probe.record_every;
      cfg.safety = time_probe.safety;
    }
    cfg.t_end = t_end;
    if (config.contains("front")) {
      const auto& f = config.at("front");
      check_keys(f, "front", {"level", "center_target"});
      cfg.front_level = number_or(f, "front", "level", cfg.front_level);
      cfg.center_target = number_or(f, "front", "center_target", cfg.center_target);
    }
    std::vector<double> unused;
    fs::path out_dir = parse_outputs(config, unused);
    if (out_override) out_dir = *out_override;
    return finish_experiment(experiments::kpp_spreading(cfg), out_dir);
  });
}

}  // namespace logheat::cli
