#pragma once

#include "logheat/types.hpp"

#include <optional>
#include <string>

namespace logheat::model {

/// Half-width of the degenerate band around a0 = lambda (relative to lambda)
/// inside which the continuation/series branch of the Gaussian formulas is used.
inline constexpr double kContinuationBand = 1e-8;

/// Logs with |value| beyond these cannot be exponentiated to a finite nonzero double.
inline constexpr double kLogMax = 709.0;
inline constexpr double kLogMin = -745.0;

/// Initial Gaussian b0 * exp(-a0 x^2 / 2).
struct GaussianParams {
  double a0;
  double b0;

  GaussianParams(double a0_, double b0_) : a0(a0_), b0(b0_) {
    if (!(a0 > 0.0) || !(b0 > 0.0)) {
      throw std::invalid_argument("GaussianParams: a0 and b0 must be > 0");
    }
  }
};

/// Evolved Gaussian coefficients at time t. log_amplitude = psi * e^{2 lambda t}
/// is ln b(t); the linear amplitude b(t) is a derived view that may overflow.
struct GaussianEvaluation {
  double t;
  double a;
  double psi;
  double log_amplitude;
};

struct RegimeReport {
  Regime regime = Regime::Undecided;
  std::optional<double> psi_infinity;
  double tol = 0.0;
  std::string evidence;
};

struct SmallDataReport {
  double m_infinity;
  double m_one;
  double tau;
  double psi_star;
  bool criterion_holds;
};

/// Amplitude-like quantity carried in log space; the linear value is a derived
/// view with a saturation flag (double-exponential dynamics overflow doubles fast).
struct LogValue {
  double log_value;
  double value;    // exp(log_value); +inf on overflow, 0 on underflow
  bool saturated;  // linear value not representable as a finite nonzero double
};

LogValue make_log_value(double log_v);

/// Reaction term: 2*lambda*u*ln(u) (Focusing) or -2*lambda*u*ln(u) (Defocusing),
/// continuously extended by 0 at u = 0. Throws std::domain_error for u < 0.
double nonlinearity(double u, const Params& p);

/// Solution n(t) = exp((ln n0) e^{2 lambda t}) of n' = 2 lambda n ln n.
LogValue ode_solution(double n0, double lambda, double t);

/// The unique nontrivial steady state: e^{1/2} e^{-lambda x^2 / 2}.
double steady_state(double x, double lambda);

/// Inverse-variance a(t) of the Gaussian solution (logistic flow between a0 and lambda).
double gaussian_a(double t, double a0, double lambda);

/// psi(t) of the Gaussian solution; switches to the a0 = lambda continuation
/// branch inside the kContinuationBand to avoid cancellation.
double gaussian_psi(double t, const GaussianParams& g, double lambda);

/// Leading asymptotics psi_infinity + e^{-2 lambda t} / 2 (error O(e^{-4 lambda t})).
double gaussian_psi_asymptotic(double t, const GaussianParams& g, double lambda);

GaussianEvaluation gaussian_evaluate(double t, const GaussianParams& g, double lambda);

/// Pointwise Gaussian solution value; log form ln u = psi e^{2 lambda t} - a x^2 / 2
/// stays exact when the linear value saturates.
LogValue gaussian_solution(double t, double x, const GaussianParams& g, double lambda);

/// Limit of psi(t); its sign separates decay / steady / growth.
double psi_infinity(const GaussianParams& g, double lambda);

RegimeReport classify_gaussian(const GaussianParams& g, double lambda, double tol = 1e-9);

struct AsymptoticNorms {
  double sup_log;
  double l1_log;
};

/// Logs of the large-time norm equivalents e^{1/2} e^{psi_inf e^{2 lambda t}} and
/// sqrt(2 pi / lambda) e^{1/2} e^{psi_inf e^{2 lambda t}}.
AsymptoticNorms asymptotic_norms(double t, const GaussianParams& g, double lambda);

/// Integral of lambda e^{-2 lambda s} ln s over [lower, infinity), via adaptive
/// quadrature up to an analytically bounded truncation point plus a closed tail term.
double weighted_log_tail(double lower, double lambda);

/// Small-data decay criterion: tau = (m1 / (sqrt(4 pi) m_inf))^2 and
/// psi_star = ln m_inf - int_tau^inf lambda e^{-2 lambda s} ln s ds + e^{-2 lambda tau} ln sqrt(tau).
SmallDataReport small_data_criterion(double m_infinity, double m_one, double lambda);

/// Dispersive bound for the pure heat flow: min(m_inf, m1 / sqrt(4 pi t)).
double heat_kernel_bound(double t, double m_infinity, double m_one);

/// The supersolution exponent psi(t) from the small-data construction:
/// (ln m_inf)(1 - e^{-2 lambda t}) for t <= tau, and the cut-integral formula for
/// t >= tau. Tends to psi_star as t -> infinity.
double smalldata_psi_curve(double t, const SmallDataReport& rep, double lambda);

}  // namespace logheat::model
