#pragma once

#include "logheat/model.hpp"
#include "logheat/types.hpp"

#include <functional>
#include <string>

namespace logheat::bounds {

/// Compactly supported plateau profile: 0 outside [-L, L], identically 1 on
/// [-L+eps, L-eps], quintic-smoothstep ramps in between. The smoothstep
/// s(r) = 10r^3 - 15r^4 + 6r^5 vanishes to second order at the support edge
/// with third derivative 60, so gamma = Theta'''(-L) = 60 / eps^3.
struct PlateauSpec {
  double L;
  double eps;
  double K;

  PlateauSpec(double L_, double eps_, double K_) : L(L_), eps(eps_), K(K_) {
    if (!(eps > 0.0) || !(eps < L)) {
      throw std::invalid_argument("PlateauSpec: need 0 < eps < L");
    }
    if (!(K > 1.0)) {
      throw std::invalid_argument("PlateauSpec: need K > 1");
    }
  }

  double gamma() const { return 60.0 / (eps * eps * eps); }
};

double smoothstep(double r);
double smoothstep_second_derivative(double r);

double theta_value(double x, double L, double eps);
double theta_second_derivative(double x, double L, double eps);  // exact, not differenced

std::function<double(double)> plateau_theta(double L, double eps);

/// r_i = Theta_K''(x_i) + 2 lambda Theta_K(x_i) ln Theta_K(x_i), with exact
/// piecewise-polynomial second derivatives and the 0 ln 0 = 0 convention.
Profile subsolution_residual(const PlateauSpec& spec, double lambda, const Grid1D& grid);

/// Smallest K (geometric bisection, 1e-6 relative) with a nonnegative residual
/// at every grid point. Requires the grid to cover [-L, L] and resolve each
/// ramp with at least 50 points.
double find_K0(double L, double eps, double lambda, const Grid1D& grid);

struct CheckReport {
  std::string bound_name;
  bool passed = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_time = 0.0;
  double worst_x = std::numeric_limits<double>::quiet_NaN();
  double first_violation_time = std::numeric_limits<double>::quiet_NaN();
  int violations = 0;
  std::string note;
};

/// sup_x u(t,x) <= n(t) from the ODE started at n0_upper, within (1 + rel_tol).
/// Compared in log space; margins reported in log units.
CheckReport ode_envelope_check(const Trajectory& traj, double n0_upper, double lambda,
                               double rel_tol = 1e-6);

enum class EnvelopeSide { UpperDecay, LowerGrowth };

/// The two-sided Gaussian-comparison envelopes: sup norm below
/// 2 e^{1/2} e^{psi_inf e^{2 lambda t}} (UpperDecay), or the minimum over
/// |x| <= R above half of e^{1/2} e^{psi_inf e^{2 lambda t}} e^{-lambda R^2/2}
/// (LowerGrowth). The trajectory's t = 0 snapshot must sit on the stated side
/// of the Gaussian datum; checks run for t >= t_min.
CheckReport gaussian_envelope_check(const Trajectory& traj, const model::GaussianParams& g,
                                    double lambda, EnvelopeSide side, double R = 0.0,
                                    double rel_tol = 1e-6, double t_min = 0.0);

/// Pointwise u(t,x) <= heat_kernel_bound(t) exp(psi(t) e^{2 lambda t}) over the
/// recorded snapshots, where psi is the small-data supersolution exponent.
CheckReport smalldata_supersolution_check(const Trajectory& traj,
                                          const model::SmallDataReport& rep, double lambda,
                                          double rel_tol = 1e-6);

using PointBound = std::function<double(double t, double x)>;

/// Generic pointwise sandwich over the recorded snapshots; violations are
/// report content, never exceptions.
CheckReport sandwich_check(const Trajectory& traj, const std::string& name,
                           const PointBound& lower, const PointBound& upper,
                           double rel_tol = 1e-6);

}  // namespace logheat::bounds
