#include "logheat/cli.hpp"
#include "logheat/version.hpp"

#include <CLI11.hpp>

#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"logheat: numerical laboratory for the 1D heat equation with a "
               "logarithmic reaction term"};
  app.set_version_flag("--version", logheat::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> run_dir_raw;
  int jobs = 1;
  double a0 = 1.0, b0 = 1.0, lambda = 1.0;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides outputs.directory)");
  };

  auto* simulate = app.add_subcommand("simulate", "run one solve and emit CSV/JSON artifacts");
  add_config(simulate);

  auto* classify = app.add_subcommand("classify", "closed-form Gaussian regime classification");
  classify->add_option("--a0", a0, "initial inverse variance")->required();
  classify->add_option("--b0", b0, "initial amplitude")->required();
  classify->add_option("--lambda", lambda, "reaction strength")->required();

  auto* threshold = app.add_subcommand("threshold", "bisect the compact-bump threshold amplitude");
  add_config(threshold);

  auto* verify = app.add_subcommand("verify", "check envelope/supersolution bounds for a run");
  add_config(verify);
  verify->add_option("--run", run_dir_raw, "existing run directory to verify instead of re-running");

  auto* sweep = app.add_subcommand("sweep", "dichotomy sweep around the steady state");
  add_config(sweep);
  sweep->add_option("--jobs", jobs, "max concurrent runs")->check(CLI::PositiveNumber);

  auto* front = app.add_subcommand("front", "defocusing spreading run with front tracking");
  add_config(front);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : logheat::cli::kConfigError;
  }

  if (simulate->parsed()) return logheat::cli::run_simulate(config_path, out_dir);
  if (classify->parsed()) return logheat::cli::run_classify(a0, b0, lambda);
  if (threshold->parsed()) return logheat::cli::run_threshold(config_path, out_dir);
  if (verify->parsed()) {
    std::optional<std::filesystem::path> run_dir;
    if (run_dir_raw) run_dir = *run_dir_raw;
    return logheat::cli::run_verify(config_path, out_dir, run_dir);
  }
  if (sweep->parsed()) return logheat::cli::run_sweep(config_path, out_dir, jobs);
  if (front->parsed()) return logheat::cli::run_front(config_path, out_dir);
  return logheat::cli::kConfigError;
}
