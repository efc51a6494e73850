#include "logheat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace logheat::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_double(const std::string& s) {
  if (s.empty()) return kNaN;
  return std::strtod(s.c_str(), nullptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          bool with_front) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "t,l1,l2,linf,energy,psi_hat";
  if (with_front) out << ",front";
  out << "\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_g17(traj.times[i]) << ',' << format_g17(traj.l1[i]) << ','
        << format_g17(traj.l2[i]) << ',' << format_g17(traj.linf[i]) << ','
        << format_g17(traj.energy[i]) << ',' << format_g17(traj.psi_hat[i]);
    if (with_front) {
      out << ',';
      if (!std::isnan(traj.front[i])) out << format_g17(traj.front[i]);
    }
    out << "\n";
  }
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file " + path.string());
  const bool with_front = line.find(",front") != std::string::npos;
  Trajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() < 6) {
      throw std::runtime_error("malformed trajectory row in " + path.string() + ": " + line);
    }
    traj.times.push_back(parse_double(cells[0]));
    traj.l1.push_back(parse_double(cells[1]));
    traj.l2.push_back(parse_double(cells[2]));
    traj.linf.push_back(parse_double(cells[3]));
    traj.energy.push_back(parse_double(cells[4]));
    traj.psi_hat.push_back(parse_double(cells[5]));
    if (with_front) traj.front.push_back(cells.size() > 6 ? parse_double(cells[6]) : kNaN);
  }
  return traj;
}

void write_snapshot_csv(const std::filesystem::path& path, const Field& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "x,u\n";
  for (int i = 0; i < field.grid.n_points; ++i) {
    out << format_g17(field.grid.point(i)) << ',' << format_g17(field.values(i)) << "\n";
  }
}

Field read_snapshot_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> xs, us;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) {
      throw std::runtime_error("malformed snapshot row in " + path.string() + ": " + line);
    }
    xs.push_back(parse_double(cells[0]));
    us.push_back(parse_double(cells[1]));
  }
  if (xs.size() < 3) throw std::runtime_error("snapshot too short in " + path.string());
  Grid1D grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
  Array v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) v(i) = us[i];
  return Field(grid, std::move(v));
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json rate_fit_json(const analysis::RateFit& fit) {
  ordered_json j;
  j["psi_limit_estimate"] = fit.psi_limit_estimate;
  j["stabilized"] = fit.stabilized;
  j["lambda_used"] = fit.lambda_used;
  j["window"] = fit.window;
  j["band"] = fit.band;
  ordered_json series = ordered_json::array();
  for (const auto& [t, p] : fit.psi_hat_series) {
    series.push_back({t, p});
  }
  j["psi_hat_series"] = std::move(series);
  return j;
}

ordered_json check_report_json(const bounds::CheckReport& rep) {
  ordered_json j;
  j["bound_name"] = rep.bound_name;
  j["passed"] = rep.passed;
  j["worst_margin"] = rep.worst_margin;
  j["worst_time"] = rep.worst_time;
  j["worst_x"] = rep.worst_x;
  j["violations"] = rep.violations;
  if (!std::isnan(rep.first_violation_time)) {
    j["first_violation_time"] = rep.first_violation_time;
  }
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

ordered_json regime_report_json(const model::RegimeReport& rep) {
  ordered_json j;
  j["class"] = to_string(rep.regime);
  if (rep.psi_infinity && std::isfinite(*rep.psi_infinity)) {
    j["psi_infinity"] = *rep.psi_infinity;
  }
  j["tol"] = rep.tol;
  j["evidence"] = rep.evidence;
  return j;
}

}  // namespace logheat::io
