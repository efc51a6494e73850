#pragma once

#include "logheat/model.hpp"
#include "logheat/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace logheat::analysis {

/// Trapezoid-rule norms; L-infinity is the grid maximum.
double norm_l1(const Field& u);
double norm_l2(const Field& u);
double norm_linf(const Field& u);

/// (1/2) int (du/dx)^2 + int (lambda/2) u^2 (1 - ln(u^2)), with the integrand
/// continuously extended by 0 at u = 0. Centered gradients inside, one-sided
/// second-order stencils at the boundary, trapezoid quadrature.
double energy(const Field& u, double lambda);

/// Empirical double-exponential rate e^{-2 lambda t} ln(sup_norm).
/// Returns -infinity when sup_norm is 0 (trajectory died out).
double psi_hat(double t, double sup_norm, double lambda);

struct RateFit {
  std::vector<std::pair<double, double>> psi_hat_series;
  double psi_limit_estimate;  // last finite sample minus the e^{-2 lambda t}/2 correction
  bool stabilized;            // last `window` corrected samples within `band`
  double lambda_used;
  int window;
  double band;
};

RateFit fit_rate(const Trajectory& traj, double lambda, int window = 10, double band = 1e-3);

/// Numerical trichotomy decision. AmplitudeCap stops classify as Growth and
/// dead (or sup < e^{-20}) trajectories as Decay regardless of the rate fit;
/// otherwise the sign of the stabilized psi-hat limit against +-band decides,
/// with Steady additionally requiring the sup norm to sit near e^{1/2}.
model::RegimeReport classify_trajectory(const Trajectory& traj, double lambda,
                                        double band = 1e-3, int window = 10);

/// Largest x where u crosses `level` (linear interpolation between grid
/// points); nullopt when the whole profile is below the level.
std::optional<double> front_position(const Field& u, double level);

struct ConvergenceFit {
  double order;
  int points_used;
  int excluded_zero_errors;
};

/// Least-squares slope of log(error) against log(dx). Entries with zero error
/// are excluded (and counted); at least two positive entries are required.
ConvergenceFit convergence_order(const std::vector<std::pair<double, double>>& dx_error);

}  // namespace logheat::analysis
