#include "logheat/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace logheat::bounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double smoothstep(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return ((6.0 * r - 15.0) * r + 10.0) * r * r * r;
}

double smoothstep_second_derivative(double r) {
  if (r <= 0.0 || r >= 1.0) return 0.0;
  return ((120.0 * r - 180.0) * r + 60.0) * r;
}

double theta_value(double x, double L, double eps) {
  const double ax = std::abs(x);
  if (ax >= L) return 0.0;
  if (ax <= L - eps) return 1.0;
  return smoothstep((L - ax) / eps);
}

double theta_second_derivative(double x, double L, double eps) {
  const double ax = std::abs(x);
  if (ax >= L || ax <= L - eps) return 0.0;
  return smoothstep_second_derivative((L - ax) / eps) / (eps * eps);
}

std::function<double(double)> plateau_theta(double L, double eps) {
  if (!(eps > 0.0) || !(eps < L)) {
    throw std::invalid_argument("plateau_theta: need 0 < eps < L");
  }
  return [L, eps](double x) { return theta_value(x, L, eps); };
}

Profile subsolution_residual(const PlateauSpec& spec, double lambda, const Grid1D& grid) {
  if (!(lambda > 0.0)) throw std::invalid_argument("subsolution_residual: lambda must be > 0");
  Array r(grid.n_points);
  const double log_k = std::log(spec.K);
  for (int i = 0; i < grid.n_points; ++i) {
    const double x = grid.point(i);
    const double th = theta_value(x, spec.L, spec.eps);
    double value = spec.K * theta_second_derivative(x, spec.L, spec.eps);
    if (th > 0.0) {
      value += 2.0 * lambda * spec.K * th * (log_k + std::log(th));
    }
    r(i) = value;
  }
  return Profile{grid, std::move(r)};
}

double find_K0(double L, double eps, double lambda, const Grid1D& grid) {
  if (grid.x_min > -L || grid.x_max < L) {
    throw std::invalid_argument("find_K0: grid must cover [-L, L]");
  }
  if (eps / grid.dx() < 50.0) {
    throw std::invalid_argument("find_K0: grid must resolve each ramp with >= 50 points");
  }
  auto feasible = [&](double K) {
    const Profile r = subsolution_residual(PlateauSpec(L, eps, K), lambda, grid);
    return r.values.minCoeff() >= -1e-12 * K * std::max(1.0, 2.0 * lambda);
  };
  double lo = 1.0 + 1e-12;
  double hi = 2.0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > 1e6) {
      throw std::runtime_error(
          "find_K0: no admissible K below 1e6 (ramp too narrow for this lambda)");
    }
  }
  while (hi / lo > 1.0 + 1e-6) {
    const double mid = std::sqrt(lo * hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

void tally(CheckReport& rep, double margin, double t, double x, double tol) {
  if (margin < rep.worst_margin) {
    rep.worst_margin = margin;
    rep.worst_time = t;
    rep.worst_x = x;
  }
  if (margin < -tol) {
    if (rep.violations == 0) rep.first_violation_time = t;
    ++rep.violations;
    rep.passed = false;
  }
}

}  // namespace

CheckReport ode_envelope_check(const Trajectory& traj, double n0_upper, double lambda,
                               double rel_tol) {
  if (!(n0_upper > 0.0)) throw std::invalid_argument("ode_envelope_check: n0_upper must be > 0");
  CheckReport rep;
  rep.bound_name = "ode_envelope(n0=" + std::to_string(n0_upper) + ")";
  rep.note = "margins are log(envelope) - log(sup)";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double sup = traj.linf[i];
    if (sup == 0.0) continue;  // dead profile is trivially below
    const double env_log = model::ode_solution(n0_upper, lambda, traj.times[i]).log_value;
    const double margin = env_log + std::log1p(rel_tol) - std::log(sup);
    tally(rep, margin, traj.times[i], kNaN, 0.0);
  }
  return rep;
}

CheckReport gaussian_envelope_check(const Trajectory& traj, const model::GaussianParams& g,
                                    double lambda, EnvelopeSide side, double R, double rel_tol,
                                    double t_min) {
  if (traj.snapshots.empty() || traj.snapshots.front().t != 0.0) {
    throw std::invalid_argument("gaussian_envelope_check: trajectory needs a t = 0 snapshot");
  }
  // precondition: the datum sits on the right side of the comparison Gaussian.
  // On a truncated grid the Dirichlet tail can never dominate a Gaussian, so
  // domination from below is only required where the Gaussian is above the
  // truncation floor.
  {
    const Field& u0 = traj.snapshots.front().field;
    const double tail_floor = 1e-14 * g.b0;
    std::ostringstream bad;
    int bad_count = 0;
    for (int i = 0; i < u0.grid.n_points; ++i) {
      const double x = u0.grid.point(i);
      const double gx = g.b0 * std::exp(-0.5 * g.a0 * x * x);
      const bool ok = side == EnvelopeSide::UpperDecay
                          ? u0.values(i) <= gx * (1.0 + 1e-12)
                          : (gx <= tail_floor || u0.values(i) >= gx * (1.0 - 1e-12));
      if (!ok) {
        if (bad_count < 3) bad << " x=" << x;
        ++bad_count;
      }
    }
    if (bad_count > 0) {
      throw std::invalid_argument("gaussian_envelope_check: datum is not pointwise " +
                                  std::string(side == EnvelopeSide::UpperDecay ? "below" : "above") +
                                  " the comparison Gaussian at " + std::to_string(bad_count) +
                                  " points, e.g." + bad.str());
    }
  }

  const double pinf = model::psi_infinity(g, lambda);
  CheckReport rep;
  rep.note = "margins are log-scale";
  if (side == EnvelopeSide::UpperDecay) {
    rep.bound_name = "gaussian_envelope_upper(psi_inf=" + std::to_string(pinf) + ")";
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double t = traj.times[i];
      if (t < t_min) continue;
      const double sup = traj.linf[i];
      if (sup == 0.0) continue;
      const double bound_log = std::log(2.0) + 0.5 + pinf * std::exp(2.0 * lambda * t);
      tally(rep, bound_log + std::log1p(rel_tol) - std::log(sup), t, kNaN, 0.0);
    }
  } else {
    rep.bound_name = "gaussian_envelope_lower(psi_inf=" + std::to_string(pinf) +
                     ", R=" + std::to_string(R) + ")";
    for (const Snapshot& snap : traj.snapshots) {
      if (snap.t < t_min) continue;
      double mn = kInf;
      double mn_x = 0.0;
      for (int i = 0; i < snap.field.grid.n_points; ++i) {
        const double x = snap.field.grid.point(i);
        if (std::abs(x) <= R && snap.field.values(i) < mn) {
          mn = snap.field.values(i);
          mn_x = x;
        }
      }
      if (!std::isfinite(mn)) continue;  // R smaller than the grid spacing
      const double bound_log =
          std::log(0.5) + 0.5 + pinf * std::exp(2.0 * lambda * snap.t) - 0.5 * lambda * R * R;
      const double margin =
          mn > 0.0 ? std::log(mn) + std::log1p(rel_tol) - bound_log : -kInf;
      tally(rep, margin, snap.t, mn_x, 0.0);
    }
  }
  return rep;
}

CheckReport smalldata_supersolution_check(const Trajectory& traj,
                                          const model::SmallDataReport& rep_in, double lambda,
                                          double rel_tol) {
  if (!rep_in.criterion_holds) {
    throw std::invalid_argument(
        "smalldata_supersolution_check: criterion does not hold (psi_star >= 0)");
  }
  CheckReport rep;
  rep.bound_name = "smalldata_supersolution(psi_star=" + std::to_string(rep_in.psi_star) + ")";
  for (const Snapshot& snap : traj.snapshots) {
    const double t = snap.t;
    const double psi = model::smalldata_psi_curve(t, rep_in, lambda);
    const double bound = model::heat_kernel_bound(t, rep_in.m_infinity, rep_in.m_one) *
                         std::exp(psi * std::exp(2.0 * lambda * t));
    for (int i = 0; i < snap.field.grid.n_points; ++i) {
      const double u = snap.field.values(i);
      const double margin = (bound * (1.0 + rel_tol) - u) / bound;
      tally(rep, margin, t, snap.field.grid.point(i), 0.0);
    }
  }
  return rep;
}

CheckReport sandwich_check(const Trajectory& traj, const std::string& name,
                           const PointBound& lower, const PointBound& upper, double rel_tol) {
  CheckReport rep;
  rep.bound_name = name;
  rep.note = "margins relative to max(bound, value, 1e-12 * profile sup)";
  for (const Snapshot& snap : traj.snapshots) {
    // mismatches far below the profile scale are truncation noise, not violations
    const double floor = 1e-12 * std::max(snap.field.values.maxCoeff(), 1e-288);
    for (int i = 0; i < snap.field.grid.n_points; ++i) {
      const double x = snap.field.grid.point(i);
      const double u = snap.field.values(i);
      if (lower) {
        const double lo = lower(snap.t, x);
        const double scale = std::max({std::abs(lo), u, floor});
        tally(rep, (u - lo) / scale, snap.t, x, rel_tol);
      }
      if (upper) {
        const double up = upper(snap.t, x);
        const double scale = std::max({std::abs(up), u, floor});
        tally(rep, (up - u) / scale, snap.t, x, rel_tol);
      }
    }
  }
  rep.passed = rep.violations == 0;
  return rep;
}

}  // namespace logheat::bounds
