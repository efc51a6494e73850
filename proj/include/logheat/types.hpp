#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace logheat {

using Array = Eigen::ArrayXd;

/// Sign convention for the reaction term: Focusing is +lambda*u*ln(u^2),
/// Defocusing is -2*lambda*u*ln(u).
enum class Sign { Focusing, Defocusing };

enum class Regime { Decay, Steady, Growth, Undecided };

struct Params {
  double lambda = 1.0;
  Sign sign = Sign::Focusing;

  Params() = default;
  Params(double lambda_, Sign sign_ = Sign::Focusing) : lambda(lambda_), sign(sign_) {
    if (!(lambda > 0.0)) {
      throw std::invalid_argument("Params: lambda must be > 0, got " + std::to_string(lambda_));
    }
  }
};

/// Uniform grid on [x_min, x_max], both endpoints included.
struct Grid1D {
  double x_min;
  double x_max;
  int n_points;

  Grid1D(double x_min_, double x_max_, int n_points_)
      : x_min(x_min_), x_max(x_max_), n_points(n_points_) {
    if (!(x_min < x_max)) {
      throw std::invalid_argument("Grid1D: x_min must be < x_max");
    }
    if (n_points < 3) {
      throw std::invalid_argument("Grid1D: n_points must be >= 3");
    }
  }

  double dx() const { return (x_max - x_min) / (n_points - 1); }
  double point(int i) const { return x_min + i * dx(); }
  Array points() const {
    return Array::LinSpaced(n_points, x_min, x_max);
  }

  bool operator==(const Grid1D&) const = default;
};

/// Sampled nonnegative profile on a grid.
struct Field {
  Grid1D grid;
  Array values;

  Field(Grid1D grid_, Array values_) : grid(grid_), values(std::move(values_)) {
    if (values.size() != grid.n_points) {
      throw std::invalid_argument("Field: values size does not match grid");
    }
    if ((values < 0.0).any()) {
      throw std::invalid_argument("Field: negative values are not allowed");
    }
  }
};

/// Sampled profile without a sign constraint (residuals, differences, bounds).
struct Profile {
  Grid1D grid;
  Array values;
};

/// w = ln u for the log-domain solver; only meaningful for strictly positive profiles.
struct LogField {
  Grid1D grid;
  Array w_values;

  LogField(Grid1D grid_, Array w_) : grid(grid_), w_values(std::move(w_)) {
    if (w_values.size() != grid.n_points) {
      throw std::invalid_argument("LogField: values size does not match grid");
    }
    if (!w_values.allFinite()) {
      throw std::invalid_argument("LogField: entries must be finite (strictly positive profile)");
    }
  }
};

enum class StopReason { HorizonReached, AmplitudeCap, AllBelowFloorTolerance };

struct Snapshot {
  double t;
  Field field;
};

/// Time series of recorded functionals plus optional snapshots.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> l1;
  std::vector<double> l2;
  std::vector<double> linf;
  std::vector<double> energy;
  std::vector<double> psi_hat;
  std::vector<double> front;  // NaN where undefined; empty when front tracking is off
  std::vector<Snapshot> snapshots;
  StopReason stop_reason = StopReason::HorizonReached;
  long clamp_count = 0;
  long steps = 0;

  std::size_t size() const { return times.size(); }
};

inline const char* to_string(Sign s) {
  return s == Sign::Focusing ? "focusing" : "defocusing";
}

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Decay: return "Decay";
    case Regime::Steady: return "Steady";
    case Regime::Growth: return "Growth";
    default: return "Undecided";
  }
}

inline const char* to_string(StopReason s) {
  switch (s) {
    case StopReason::HorizonReached: return "HorizonReached";
    case StopReason::AmplitudeCap: return "AmplitudeCap";
    default: return "AllBelowFloorTolerance";
  }
}

}  // namespace logheat
