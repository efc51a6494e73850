#pragma once

#include "logheat/solver.hpp"
#include "logheat/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace logheat::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kOk = 0;
inline constexpr int kExperimentFailed = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalError = 3;

/// Thrown on schema violations; carries the offending field in the message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A validated `simulate` configuration plus the resolved-config echo that
/// goes verbatim into every emitted JSON.
struct RunSetup {
  Params params;
  std::optional<Grid1D> grid;
  std::function<double(double)> datum;
  solver::SolverConfig solver_config;
  double t_end = 0.0;
  bool log_mode = false;
  std::filesystem::path out_dir;
  ordered_json resolved;
};

RunSetup parse_simulate_config(const ordered_json& config);

struct SimulateOutcome {
  Trajectory trajectory;
  ordered_json summary;
  bool front_tracked = false;
};

/// Runs the configured solve and assembles the summary (deterministic).
SimulateOutcome simulate(const RunSetup& setup);

/// Writes trajectory.csv, snapshots/snapshot_NNN.csv, and summary.json.
void write_run_outputs(const std::filesystem::path& dir, const SimulateOutcome& outcome);

// Subcommand entry points; exit codes: 0 ok/pass, 1 experiment failed,
// 2 config error, 3 numerical failure.
int run_simulate(const std::filesystem::path& config_path,
                 const std::optional<std::string>& out_override);
int run_classify(double a0, double b0, double lambda);
int run_threshold(const std::filesystem::path& config_path,
                  const std::optional<std::string>& out_override);
int run_verify(const std::filesystem::path& config_path,
               const std::optional<std::string>& out_override,
               const std::optional<std::filesystem::path>& run_dir);
int run_sweep(const std::filesystem::path& config_path,
              const std::optional<std::string>& out_override, int jobs);
int run_front(const std::filesystem::path& config_path,
              const std::optional<std::string>& out_override);

}  // namespace logheat::cli
