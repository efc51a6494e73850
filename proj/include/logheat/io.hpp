#pragma once

#include "logheat/analysis.hpp"
#include "logheat/bounds.hpp"
#include "logheat/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace logheat::io {

using ordered_json = nlohmann::ordered_json;

/// All floating point leaves the process with 17 significant digits.
std::string format_g17(double v);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool with_front);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

void write_snapshot_csv(const std::filesystem::path& path, const Field& field);
Field read_snapshot_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

ordered_json rate_fit_json(const analysis::RateFit& fit);
ordered_json check_report_json(const bounds::CheckReport& rep);
ordered_json regime_report_json(const model::RegimeReport& rep);

}  // namespace logheat::io
