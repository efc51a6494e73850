#pragma once

#include "logheat/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace logheat::solver {

enum class TimeScheme { ExplicitEuler, ExplicitRK2 };
enum class Boundary { DirichletZero };

struct SolverConfig {
  Params params;
  Boundary boundary = Boundary::DirichletZero;
  TimeScheme time_scheme = TimeScheme::ExplicitRK2;
  double safety = 0.8;            // CFL safety factor in (0, 1]
  double amplitude_cap = 1e100;   // stop (and classify as growth) past this sup norm
  double floor = 0.0;             // values below are clamped to 0
  double record_every = 0.1;
  std::optional<double> front_level;   // track front_position when set
  std::vector<double> snapshot_times;  // ascending; hit exactly by clipping dt
  bool snapshot_every_record = false;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " (at t = " + std::to_string(t) + ")"), time(t) {}
  double time;
};

/// Pointwise samples of f on the grid; endpoints forced to 0 when requested.
/// Negative samples are a domain error.
Field sample(const std::function<double(double)>& f, const Grid1D& grid,
             bool zero_endpoints = false);

/// Second difference with Dirichlet ghost value 0 at both ends.
Profile laplacian(const Field& u);

/// laplacian(u) + reaction, pointwise.
Profile rhs(const Field& u, const Params& p);

/// safety * min(dx^2/2, 1/(2 lambda (1 + |ln u_max|))) with u_max = max(max u, 1);
/// the second branch bounds the local Lipschitz constant of the reaction.
double stable_dt(const Field& u, const SolverConfig& cfg);

/// One explicit step (Euler or midpoint RK2). Negative roundoff values are
/// clamped to 0 (counted into *clamps when given), Dirichlet endpoints re-zeroed.
/// Non-finite output throws IntegrationError naming the time.
Field step(const Field& u, double dt, const SolverConfig& cfg, double t_now = 0.0,
           long* clamps = nullptr);

/// Method-of-lines integration with adaptive dt up to t_end, the amplitude cap,
/// or extinction of the whole profile. Deterministic for a fixed config.
Trajectory solve(const Field& u0, const SolverConfig& cfg, double t_end);

/// Evolves w = ln u via w_t = w_xx + (w_x)^2 +- 2 lambda w. Valid for strictly
/// positive (Gaussian-class) data only; boundary rows use quadratic extrapolation,
/// which is exact for Gaussian profiles. Reaches horizons the linear solver cannot.
Trajectory solve_log_domain(const LogField& w0, const SolverConfig& cfg, double t_end);

// Initial-data library (closed-form data used across the experiments).
std::function<double(double)> gaussian_datum(double a0, double b0);
std::function<double(double)> scaled_steady_datum(double lambda, double factor);
std::function<double(double)> heavy_tail_datum(double m_infinity, double alpha);
std::function<double(double)> compact_bump_datum(double half_support, double ramp_width,
                                                 double amplitude);
std::function<double(double)> plateau_datum(double half_support, double ramp_width, double K);

enum class DatumKind { Gaussian, ScaledSteady, HeavyTail, CompactBump, Plateau };

/// Keyed dispatch over the library above; throws with the offending parameter name.
std::function<double(double)> initial_data(DatumKind kind,
                                           const std::map<std::string, double>& params);

}  // namespace logheat::solver
