#include "logheat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace logheat::analysis {

namespace {

double trapezoid(const Array& v, double dx) {
  const auto n = v.size();
  return dx * (v.sum() - 0.5 * (v(0) + v(n - 1)));
}

}  // namespace

double norm_l1(const Field& u) {
  return trapezoid(u.values, u.grid.dx());
}

double norm_l2(const Field& u) {
  return std::sqrt(trapezoid(u.values.square(), u.grid.dx()));
}

double norm_linf(const Field& u) {
  return u.values.maxCoeff();
}

double energy(const Field& u, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("energy: lambda must be > 0");
  const auto& v = u.values;
  const auto n = v.size();
  const double dx = u.grid.dx();
  Array grad(n);
  grad.segment(1, n - 2) = (v.segment(2, n - 2) - v.segment(0, n - 2)) / (2.0 * dx);
  grad(0) = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * dx);
  grad(n - 1) = (3.0 * v(n - 1) - 4.0 * v(n - 2) + v(n - 3)) / (2.0 * dx);
  // u^2 (1 - ln u^2) -> 0 as u -> 0
  const Array potential =
      (v > 0.0).select(0.5 * lambda * v.square() * (1.0 - 2.0 * v.log()), 0.0);
  return trapezoid(0.5 * grad.square() + potential, dx);
}

double psi_hat(double t, double sup_norm, double lambda) {
  if (sup_norm < 0.0) throw std::domain_error("psi_hat: sup_norm must be >= 0");
  if (t < 0.0) throw std::invalid_argument("psi_hat: t must be >= 0");
  if (sup_norm == 0.0) return -std::numeric_limits<double>::infinity();
  return std::exp(-2.0 * lambda * t) * std::log(sup_norm);
}

RateFit fit_rate(const Trajectory& traj, double lambda, int window, double band) {
  RateFit fit;
  fit.lambda_used = lambda;
  fit.window = window;
  fit.band = band;
  fit.stabilized = false;
  fit.psi_limit_estimate = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> corrected;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    fit.psi_hat_series.emplace_back(traj.times[i], traj.psi_hat[i]);
    // once the sup norm sinks to the bottom of double range the recorded value
    // is set by the floating floor, not the PDE; those samples carry no rate
    if (traj.linf[i] < 1e-280) continue;
    // subtract the universal e^{-2 lambda t}/2 term of the psi expansion
    const double c = traj.psi_hat[i] - 0.5 * std::exp(-2.0 * lambda * traj.times[i]);
    if (std::isfinite(c)) corrected.push_back(c);
  }
  if (corrected.empty()) return fit;
  fit.psi_limit_estimate = corrected.back();
  if (static_cast<int>(corrected.size()) >= window) {
    const auto tail = corrected.end() - window;
    const double hi = *std::max_element(tail, corrected.end());
    const double lo = *std::min_element(tail, corrected.end());
    fit.stabilized = (hi - lo) <= band;
  }
  return fit;
}

model::RegimeReport classify_trajectory(const Trajectory& traj, double lambda,
                                        double band, int window) {
  if (traj.size() == 0) throw std::invalid_argument("classify_trajectory: empty trajectory");
  model::RegimeReport rep;
  rep.tol = band;
  std::ostringstream ev;

  if (traj.stop_reason == StopReason::AmplitudeCap) {
    rep.regime = Regime::Growth;
    ev << "amplitude cap reached at t = " << traj.times.back();
    rep.evidence = ev.str();
    return rep;
  }
  const double final_sup = traj.linf.back();
  if (traj.stop_reason == StopReason::AllBelowFloorTolerance || final_sup < std::exp(-20.0)) {
    rep.regime = Regime::Decay;
    ev << "sup norm fell to " << final_sup;
    rep.evidence = ev.str();
    return rep;
  }

  const RateFit fit = fit_rate(traj, lambda, window, band);
  rep.psi_infinity = fit.psi_limit_estimate;
  if (!fit.stabilized) {
    rep.regime = Regime::Undecided;
    ev << "psi-hat not stabilized within band " << band << " over the last " << window
       << " samples";
    rep.evidence = ev.str();
    return rep;
  }
  const double est = fit.psi_limit_estimate;
  ev << "stabilized psi-hat limit " << est;
  if (est > band) {
    rep.regime = Regime::Growth;
  } else if (est < -band) {
    rep.regime = Regime::Decay;
  } else {
    // near-zero rate: steady only if the amplitude actually sits near e^{1/2}
    const double log_dev = std::log(final_sup) - 0.5;
    if (std::abs(log_dev) <= 0.25) {
      rep.regime = Regime::Steady;
    } else {
      rep.regime = Regime::Undecided;
      ev << ", but sup norm " << final_sup << " is far from e^{1/2}";
    }
  }
  rep.evidence = ev.str();
  return rep;
}

std::optional<double> front_position(const Field& u, double level) {
  if (!(level > 0.0)) throw std::invalid_argument("front_position: level must be > 0");
  const auto& v = u.values;
  const int n = static_cast<int>(v.size());
  if (v.maxCoeff() < level) return std::nullopt;
  for (int i = n - 1; i >= 0; --i) {
    if (v(i) >= level) {
      if (i == n - 1) return u.grid.x_max;
      const double frac = (v(i) - level) / (v(i) - v(i + 1));
      return u.grid.point(i) + frac * u.grid.dx();
    }
  }
  return std::nullopt;  // unreachable
}

ConvergenceFit convergence_order(const std::vector<std::pair<double, double>>& dx_error) {
  ConvergenceFit fit{0.0, 0, 0};
  std::vector<double> lx, ly;
  for (const auto& [dx, err] : dx_error) {
    if (!(dx > 0.0)) throw std::invalid_argument("convergence_order: dx must be > 0");
    if (err < 0.0) throw std::invalid_argument("convergence_order: errors must be >= 0");
    if (err == 0.0) {
      ++fit.excluded_zero_errors;
      continue;
    }
    lx.push_back(std::log(dx));
    ly.push_back(std::log(err));
  }
  fit.points_used = static_cast<int>(lx.size());
  if (fit.points_used < 2) {
    throw std::invalid_argument("convergence_order: need at least two positive-error entries");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < fit.points_used; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double n = fit.points_used;
  fit.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return fit;
}

}  // namespace logheat::analysis
