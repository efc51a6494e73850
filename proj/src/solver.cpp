#include "logheat/solver.hpp"

#include "logheat/analysis.hpp"
#include "logheat/bounds.hpp"
#include "logheat/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logheat::solver {

namespace {

constexpr double kTimeEps = 1e-12;

bool near_time(double t, double target) {
  return std::abs(t - target) <= kTimeEps * std::max(1.0, std::abs(target));
}

void validate_config(const SolverConfig& cfg) {
  if (!(cfg.safety > 0.0 && cfg.safety <= 1.0)) {
    throw std::invalid_argument("SolverConfig: safety must be in (0, 1]");
  }
  if (!(cfg.amplitude_cap > 1.0)) {
    throw std::invalid_argument("SolverConfig: amplitude_cap must be > 1");
  }
  if (cfg.floor < 0.0) {
    throw std::invalid_argument("SolverConfig: floor must be >= 0");
  }
  if (!(cfg.record_every > 0.0)) {
    throw std::invalid_argument("SolverConfig: record_every must be > 0");
  }
}

long clamp_low(Array& v, double floor) {
  long count = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0 && (v(i) < 0.0 || v(i) < floor)) {
      v(i) = 0.0;
      ++count;
    }
  }
  return count;
}

Array reaction(const Array& u, const Params& p) {
  const double s = p.sign == Sign::Focusing ? 2.0 * p.lambda : -2.0 * p.lambda;
  return (u > 0.0).select(s * u * u.log(), 0.0);
}

Array rhs_values(const Array& u, double dx, const Params& p) {
  const auto n = u.size();
  const double dx2 = dx * dx;
  Array out(n);
  out.segment(1, n - 2) =
      (u.segment(0, n - 2) - 2.0 * u.segment(1, n - 2) + u.segment(2, n - 2)) / dx2;
  out(0) = (-2.0 * u(0) + u(1)) / dx2;
  out(n - 1) = (u(n - 2) - 2.0 * u(n - 1)) / dx2;
  out += reaction(u, p);
  return out;
}

}  // namespace

Field sample(const std::function<double(double)>& f, const Grid1D& grid, bool zero_endpoints) {
  Array v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    const double value = f(x);
    if (value < 0.0) {
      throw std::domain_error("sample: negative value " + std::to_string(value) + " at x = " +
                              std::to_string(x));
    }
    v(i) = value;
  }
  if (zero_endpoints) {
    v(0) = 0.0;
    v(grid.n_points - 1) = 0.0;
  }
  return Field(grid, std::move(v));
}

Profile laplacian(const Field& u) {
  const auto& v = u.values;
  const auto n = v.size();
  const double dx2 = u.grid.dx() * u.grid.dx();
  Array lap(n);
  lap.segment(1, n - 2) =
      (v.segment(0, n - 2) - 2.0 * v.segment(1, n - 2) + v.segment(2, n - 2)) / dx2;
  lap(0) = (-2.0 * v(0) + v(1)) / dx2;
  lap(n - 1) = (v(n - 2) - 2.0 * v(n - 1)) / dx2;
  return Profile{u.grid, std::move(lap)};
}

Profile rhs(const Field& u, const Params& p) {
  return Profile{u.grid, rhs_values(u.values, u.grid.dx(), p)};
}

double stable_dt(const Field& u, const SolverConfig& cfg) {
  const double dx = u.grid.dx();
  const double diffusive = 0.5 * dx * dx;
  const double raw_max = u.values.maxCoeff();
  if (raw_max == 0.0) return cfg.safety * diffusive;
  const double u_max = std::max(raw_max, 1.0);
  const double reactive =
      1.0 / (2.0 * cfg.params.lambda * (1.0 + std::abs(std::log(u_max))));
  return cfg.safety * std::min(diffusive, reactive);
}

Field step(const Field& u, double dt, const SolverConfig& cfg, double t_now, long* clamps) {
  const double dx = u.grid.dx();
  const auto n = u.values.size();
  Array next(n);
  long local_clamps = 0;
  if (cfg.time_scheme == TimeScheme::ExplicitEuler) {
    next = u.values + dt * rhs_values(u.values, dx, cfg.params);
  } else {
    Array mid = u.values + 0.5 * dt * rhs_values(u.values, dx, cfg.params);
    local_clamps += clamp_low(mid, cfg.floor);
    mid(0) = 0.0;
    mid(n - 1) = 0.0;
    next = u.values + dt * rhs_values(mid, dx, cfg.params);
  }
  local_clamps += clamp_low(next, cfg.floor);
  next(0) = 0.0;
  next(n - 1) = 0.0;
  if (!next.allFinite()) {
    throw IntegrationError("integration produced a non-finite value", t_now + dt);
  }
  if (clamps) *clamps += local_clamps;
  return Field(u.grid, std::move(next));
}

namespace {

struct Recorder {
  const SolverConfig& cfg;
  Trajectory& traj;

  void operator()(double t, const Field& u, bool with_snapshot) const {
    traj.times.push_back(t);
    traj.l1.push_back(analysis::norm_l1(u));
    traj.l2.push_back(analysis::norm_l2(u));
    const double sup = analysis::norm_linf(u);
    traj.linf.push_back(sup);
    traj.energy.push_back(analysis::energy(u, cfg.params.lambda));
    traj.psi_hat.push_back(analysis::psi_hat(t, sup, cfg.params.lambda));
    if (cfg.front_level) {
      const auto fp = analysis::front_position(u, *cfg.front_level);
      traj.front.push_back(fp ? *fp : std::numeric_limits<double>::quiet_NaN());
    }
    if (with_snapshot || cfg.snapshot_every_record) {
      traj.snapshots.push_back({t, u});
    }
  }
};

}  // namespace

Trajectory solve(const Field& u0, const SolverConfig& cfg, double t_end) {
  validate_config(cfg);
  if (!(t_end > 0.0)) throw std::invalid_argument("solve: t_end must be > 0");

  Field u = u0;
  u.values(0) = 0.0;
  u.values(u.grid.n_points - 1) = 0.0;

  Trajectory traj;
  Recorder record{cfg, traj};

  std::vector<double> snaps = cfg.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) ++next_snap;

  // an identically-zero datum stays zero; it coasts to the horizon rather
  // than reporting extinction
  const bool started_positive = u.values.maxCoeff() > 0.0;

  record(0.0, u, next_snap > 0);

  double t = 0.0;
  long record_index = 1;
  while (t < t_end - kTimeEps) {
    double next_event = std::min(record_index * cfg.record_every, t_end);
    if (next_snap < snaps.size()) next_event = std::min(next_event, snaps[next_snap]);

    // stretch onto the event when it is within a ppb, split the last interval
    // evenly otherwise, so no unsteppable sliver is ever left behind
    const double stable = stable_dt(u, cfg);
    const double gap = next_event - t;
    double dt = stable;
    if (gap <= stable * (1.0 + 1e-9)) {
      dt = gap;
    } else if (gap < 2.0 * stable) {
      dt = 0.5 * gap;
    }
    if (!(dt > kTimeEps * std::max(1.0, t))) {
      throw IntegrationError("time step underflow", t);
    }
    u = step(u, dt, cfg, t, &traj.clamp_count);
    t += dt;
    ++traj.steps;

    bool at_snap = false;
    if (next_snap < snaps.size() && near_time(t, snaps[next_snap])) {
      at_snap = true;
      ++next_snap;
    }
    const bool at_record = near_time(t, record_index * cfg.record_every);
    if (at_record) ++record_index;

    const double sup = u.values.maxCoeff();
    const bool cap_hit = sup > cfg.amplitude_cap;
    const bool died = started_positive && sup == 0.0;
    const bool at_end = near_time(t, t_end);

    if (at_record || at_snap || cap_hit || died || at_end) {
      record(t, u, at_snap || cap_hit || died);
    }
    if (cap_hit) {
      traj.stop_reason = StopReason::AmplitudeCap;
      return traj;
    }
    if (died) {
      traj.stop_reason = StopReason::AllBelowFloorTolerance;
      return traj;
    }
  }
  traj.stop_reason = StopReason::HorizonReached;
  return traj;
}

namespace {

// RHS of w_t = w_xx + (w_x)^2 +- 2 lambda w with quadratic-extrapolation ghost
// rows; exact in space for profiles quadratic in x (the whole Gaussian family).
Array log_rhs_values(const Array& w, double dx, const Params& p) {
  const auto n = w.size();
  Array ext(n + 2);
  ext.segment(1, n) = w;
  ext(0) = 3.0 * w(0) - 3.0 * w(1) + w(2);
  ext(n + 1) = 3.0 * w(n - 1) - 3.0 * w(n - 2) + w(n - 3);
  Array wxx = (ext.segment(0, n) - 2.0 * ext.segment(1, n) + ext.segment(2, n)) / (dx * dx);
  Array wx = (ext.segment(2, n) - ext.segment(0, n)) / (2.0 * dx);
  const double s = p.sign == Sign::Focusing ? 2.0 * p.lambda : -2.0 * p.lambda;
  return wxx + wx.square() + s * w;
}

double log_stable_dt(const Array& w, double dx, const SolverConfig& cfg) {
  const auto n = w.size();
  const double grad_max =
      ((w.segment(2, n - 2) - w.segment(0, n - 2)).abs() / (2.0 * dx)).maxCoeff();
  const double diffusive = 0.5 * dx * dx;
  const double advective = dx / (2.0 * grad_max + 1e-300);
  const double reactive = 0.5 / cfg.params.lambda;
  return cfg.safety * std::min({diffusive, advective, reactive});
}

// log-sum-exp trapezoid: log of integral of exp(k*w)
double log_trapezoid_exp(const Array& w, double k, double dx) {
  const double m = w.maxCoeff();
  const Array e = (k * (w - m)).exp();
  const auto n = e.size();
  return k * m + std::log(dx * (e.sum() - 0.5 * (e(0) + e(n - 1))));
}

}  // namespace

Trajectory solve_log_domain(const LogField& w0, const SolverConfig& cfg, double t_end) {
  validate_config(cfg);
  if (!(t_end > 0.0)) throw std::invalid_argument("solve_log_domain: t_end must be > 0");
  const double dx = w0.grid.dx();
  // a cap at or beyond the double range means "uncapped": the whole point of
  // the log domain is to ride out amplitudes no linear double can hold
  const double log_cap = cfg.amplitude_cap >= 1e308
                             ? std::numeric_limits<double>::infinity()
                             : std::log(cfg.amplitude_cap);

  Array w = w0.w_values;
  Trajectory traj;

  auto record = [&](double t, bool with_snapshot) {
    const double m = w.maxCoeff();
    traj.times.push_back(t);
    traj.l1.push_back(std::exp(log_trapezoid_exp(w, 1.0, dx)));
    traj.l2.push_back(std::exp(0.5 * log_trapezoid_exp(w, 2.0, dx)));
    traj.linf.push_back(std::exp(m));
    // the energy integrand needs u^2 in linear form; give up once that overflows
    if (2.0 * m < model::kLogMax) {
      traj.energy.push_back(analysis::energy(Field(w0.grid, w.exp()), cfg.params.lambda));
    } else {
      traj.energy.push_back(std::numeric_limits<double>::quiet_NaN());
    }
    traj.psi_hat.push_back(std::exp(-2.0 * cfg.params.lambda * t) * m);
    if (cfg.front_level) {
      const double log_level = std::log(*cfg.front_level);
      std::optional<double> fp;
      const int n = static_cast<int>(w.size());
      for (int i = n - 1; i >= 0 && !fp; --i) {
        if (w(i) >= log_level) {
          if (i == n - 1) {
            fp = w0.grid.x_max;
          } else {
            fp = w0.grid.point(i) + dx * (w(i) - log_level) / (w(i) - w(i + 1));
          }
        }
      }
      traj.front.push_back(fp ? *fp : std::numeric_limits<double>::quiet_NaN());
    }
    if (with_snapshot || cfg.snapshot_every_record) {
      traj.snapshots.push_back({t, Field(w0.grid, w.exp())});
    }
  };

  record(0.0, false);

  double t = 0.0;
  long record_index = 1;
  while (t < t_end - kTimeEps) {
    const double next_event = std::min(record_index * cfg.record_every, t_end);
    const double stable = log_stable_dt(w, dx, cfg);
    const double gap = next_event - t;
    double dt = stable;
    if (gap <= stable * (1.0 + 1e-9)) {
      dt = gap;
    } else if (gap < 2.0 * stable) {
      dt = 0.5 * gap;
    }
    if (!(dt > kTimeEps * std::max(1.0, t))) {
      throw IntegrationError("time step underflow (log domain)", t);
    }
    if (cfg.time_scheme == TimeScheme::ExplicitEuler) {
      w += dt * log_rhs_values(w, dx, cfg.params);
    } else {
      const Array mid = w + 0.5 * dt * log_rhs_values(w, dx, cfg.params);
      w += dt * log_rhs_values(mid, dx, cfg.params);
    }
    t += dt;
    ++traj.steps;
    if (!w.allFinite()) {
      throw IntegrationError("log-domain integration produced a non-finite value", t);
    }
    if (w.minCoeff() < -1e6) {
      throw IntegrationError(
          "log-domain state fell below -1e6; the profile is effectively vanishing, "
          "use the linear-domain solver",
          t);
    }

    const bool at_record = near_time(t, record_index * cfg.record_every);
    if (at_record) ++record_index;
    const bool cap_hit = w.maxCoeff() > log_cap;
    const bool at_end = near_time(t, t_end);
    if (at_record || cap_hit || at_end) record(t, cap_hit);
    if (cap_hit) {
      traj.stop_reason = StopReason::AmplitudeCap;
      return traj;
    }
  }
  traj.stop_reason = StopReason::HorizonReached;
  return traj;
}

std::function<double(double)> gaussian_datum(double a0, double b0) {
  if (!(a0 > 0.0) || !(b0 > 0.0)) {
    throw std::invalid_argument("gaussian_datum: a0 and b0 must be > 0");
  }
  return [a0, b0](double x) { return b0 * std::exp(-0.5 * a0 * x * x); };
}

std::function<double(double)> scaled_steady_datum(double lambda, double factor) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaled_steady_datum: lambda must be > 0");
  if (factor < 0.0) throw std::invalid_argument("scaled_steady_datum: factor must be >= 0");
  return [lambda, factor](double x) { return factor * model::steady_state(x, lambda); };
}

std::function<double(double)> heavy_tail_datum(double m_infinity, double alpha) {
  if (!(m_infinity > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("heavy_tail_datum: m_infinity and alpha must be > 0");
  }
  return [m_infinity, alpha](double x) {
    return m_infinity * std::exp(-alpha * (std::sqrt(1.0 + x * x) - 1.0));
  };
}

std::function<double(double)> compact_bump_datum(double half_support, double ramp_width,
                                                 double amplitude) {
  if (!(ramp_width > 0.0) || !(ramp_width < half_support)) {
    throw std::invalid_argument("compact_bump_datum: need 0 < ramp_width < half_support");
  }
  if (!(amplitude > 0.0)) throw std::invalid_argument("compact_bump_datum: amplitude must be > 0");
  return [half_support, ramp_width, amplitude](double x) {
    return amplitude * bounds::theta_value(x, half_support, ramp_width);
  };
}

std::function<double(double)> plateau_datum(double half_support, double ramp_width, double K) {
  if (!(ramp_width > 0.0) || !(ramp_width < half_support)) {
    throw std::invalid_argument("plateau_datum: need 0 < ramp_width < half_support");
  }
  if (!(K > 0.0)) throw std::invalid_argument("plateau_datum: K must be > 0");
  return [half_support, ramp_width, K](double x) {
    return K * bounds::theta_value(x, half_support, ramp_width);
  };
}

namespace {

double take(const std::map<std::string, double>& params, const char* key,
            const char* kind) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument(std::string("initial_data(") + kind + "): missing parameter '" +
                                key + "'");
  }
  return it->second;
}

}  // namespace

std::function<double(double)> initial_data(DatumKind kind,
                                           const std::map<std::string, double>& params) {
  switch (kind) {
    case DatumKind::Gaussian:
      return gaussian_datum(take(params, "a0", "gaussian"), take(params, "b0", "gaussian"));
    case DatumKind::ScaledSteady:
      return scaled_steady_datum(take(params, "lambda", "scaled_steady"),
                                 take(params, "factor", "scaled_steady"));
    case DatumKind::HeavyTail:
      return heavy_tail_datum(take(params, "m_infinity", "heavy_tail"),
                              take(params, "alpha", "heavy_tail"));
    case DatumKind::CompactBump:
      return compact_bump_datum(take(params, "half_support", "compact_bump"),
                                take(params, "ramp_width", "compact_bump"),
                                take(params, "amplitude", "compact_bump"));
    case DatumKind::Plateau:
      return plateau_datum(take(params, "half_support", "plateau"),
                           take(params, "ramp_width", "plateau"), take(params, "K", "plateau"));
  }
  throw std::invalid_argument("initial_data: unknown kind");
}

}  // namespace logheat::solver
