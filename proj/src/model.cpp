#include "logheat/model.hpp"

#include "logheat/quadrature.hpp"

#include <cmath>
#include <limits>

namespace logheat::model {

namespace {

constexpr double kPi = 3.14159265358979323846;

// (ln(lambda) - ln(a0 + (lambda - a0) e^{-2 lambda t})) / (lambda - a0) written as
// -log1p(-q) / (lambda - a0) with q = (lambda - a0) c / lambda and c = 1 - e^{-2 lambda t}.
// Near a0 = lambda the explicit series in q sidesteps the 0/0.
double log_ratio(double a0, double lambda, double c) {
  const double d = lambda - a0;
  const double q = d * c / lambda;
  if (std::abs(d) < kContinuationBand * lambda) {
    return (c / lambda) * (1.0 + q / 2.0 + q * q / 3.0);
  }
  return -std::log1p(-q) / d;
}

}  // namespace

LogValue make_log_value(double log_v) {
  LogValue out;
  out.log_value = log_v;
  out.saturated = !(log_v < kLogMax && log_v > kLogMin);
  out.value = std::exp(log_v);  // +inf / 0 beyond range
  return out;
}

double nonlinearity(double u, const Params& p) {
  if (u < 0.0) {
    throw std::domain_error("nonlinearity: u must be nonnegative, got " + std::to_string(u));
  }
  if (u == 0.0) return 0.0;
  const double v = 2.0 * p.lambda * u * std::log(u);
  return p.sign == Sign::Focusing ? v : -v;
}

LogValue ode_solution(double n0, double lambda, double t) {
  if (!(n0 > 0.0)) throw std::domain_error("ode_solution: n0 must be > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("ode_solution: lambda must be > 0");
  if (t < 0.0) throw std::invalid_argument("ode_solution: t must be >= 0");
  const double ln0 = std::log(n0);
  // guard 0 * inf when the fixed point n0 = 1 meets a huge horizon
  const double log_v = ln0 == 0.0 ? 0.0 : ln0 * std::exp(2.0 * lambda * t);
  return make_log_value(log_v);
}

double steady_state(double x, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("steady_state: lambda must be > 0");
  return std::exp(0.5 - 0.5 * lambda * x * x);
}

double gaussian_a(double t, double a0, double lambda) {
  if (!(a0 > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("gaussian_a: a0 and lambda must be > 0");
  }
  // a0 + (lambda - a0) e^{-2 lambda t} >= min(a0, lambda) > 0 for t >= 0
  return lambda * a0 / (a0 + (lambda - a0) * std::exp(-2.0 * lambda * t));
}

double gaussian_psi(double t, const GaussianParams& g, double lambda) {
  const double c = -std::expm1(-2.0 * lambda * t);  // 1 - e^{-2 lambda t}
  return std::log(g.b0) - 0.5 * g.a0 * log_ratio(g.a0, lambda, c);
}

double gaussian_psi_asymptotic(double t, const GaussianParams& g, double lambda) {
  return psi_infinity(g, lambda) + 0.5 * std::exp(-2.0 * lambda * t);
}

GaussianEvaluation gaussian_evaluate(double t, const GaussianParams& g, double lambda) {
  GaussianEvaluation ev;
  ev.t = t;
  ev.a = gaussian_a(t, g.a0, lambda);
  ev.psi = gaussian_psi(t, g, lambda);
  ev.log_amplitude = ev.psi == 0.0 ? 0.0 : ev.psi * std::exp(2.0 * lambda * t);
  return ev;
}

LogValue gaussian_solution(double t, double x, const GaussianParams& g, double lambda) {
  const GaussianEvaluation ev = gaussian_evaluate(t, g, lambda);
  return make_log_value(ev.log_amplitude - 0.5 * ev.a * x * x);
}

double psi_infinity(const GaussianParams& g, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("psi_infinity: lambda must be > 0");
  return std::log(g.b0) - 0.5 * g.a0 * log_ratio(g.a0, lambda, 1.0);
}

RegimeReport classify_gaussian(const GaussianParams& g, double lambda, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("classify_gaussian: tol must be > 0");
  RegimeReport rep;
  const double pi = psi_infinity(g, lambda);
  rep.psi_infinity = pi;
  rep.tol = tol;
  if (pi < -tol) {
    rep.regime = Regime::Decay;
  } else if (pi > tol) {
    rep.regime = Regime::Growth;
  } else {
    rep.regime = Regime::Steady;
  }
  rep.evidence = "closed form psi_infinity = " + std::to_string(pi) +
                 " against tol = " + std::to_string(tol);
  return rep;
}

AsymptoticNorms asymptotic_norms(double t, const GaussianParams& g, double lambda) {
  const double pi = psi_infinity(g, lambda);
  const double amp = pi == 0.0 ? 0.0 : pi * std::exp(2.0 * lambda * t);
  AsymptoticNorms n;
  n.sup_log = 0.5 + amp;
  n.l1_log = n.sup_log + 0.5 * std::log(2.0 * kPi / lambda);
  return n;
}

double weighted_log_tail(double lower, double lambda) {
  if (!(lower > 0.0)) throw std::invalid_argument("weighted_log_tail: lower must be > 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("weighted_log_tail: lambda must be > 0");
  // Integration by parts gives, for S >= 1,
  //   int_S^inf lambda e^{-2 lambda s} ln s ds
  //     = e^{-2 lambda S} ln(S)/2 + (1/2) int_S^inf e^{-2 lambda s} / s ds,
  // and the remaining integral lies in (0, e^{-2 lambda S} / (2 lambda S)).
  auto tail_bound = [lambda](double S) {
    return std::exp(-2.0 * lambda * S) * (0.5 * std::abs(std::log(S)) + 0.25 / (lambda * S));
  };
  double S = std::max(lower, 1.0);
  while (tail_bound(S) > 1e-14) S *= 1.5;
  double core = 0.0;
  if (lower < S) {
    auto f = [lambda](double s) { return lambda * std::exp(-2.0 * lambda * s) * std::log(s); };
    core = quadrature::integrate(f, lower, S, 1e-13).value;
  }
  const double e = std::exp(-2.0 * lambda * S);
  const double tail = 0.5 * e * std::log(S) + e / (8.0 * lambda * S);
  return core + tail;
}

SmallDataReport small_data_criterion(double m_infinity, double m_one, double lambda) {
  if (!(m_infinity > 0.0) || !(m_one > 0.0)) {
    throw std::invalid_argument("small_data_criterion: norms must be > 0");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("small_data_criterion: lambda must be > 0");
  SmallDataReport rep;
  rep.m_infinity = m_infinity;
  rep.m_one = m_one;
  const double root = m_one / (std::sqrt(4.0 * kPi) * m_infinity);
  rep.tau = root * root;
  rep.psi_star = std::log(m_infinity) - weighted_log_tail(rep.tau, lambda) +
                 std::exp(-2.0 * lambda * rep.tau) * 0.5 * std::log(rep.tau);
  rep.criterion_holds = rep.psi_star < 0.0;
  return rep;
}

double heat_kernel_bound(double t, double m_infinity, double m_one) {
  if (t < 0.0) throw std::invalid_argument("heat_kernel_bound: t must be >= 0");
  if (t == 0.0) return m_infinity;
  return std::min(m_infinity, m_one / std::sqrt(4.0 * kPi * t));
}

double smalldata_psi_curve(double t, const SmallDataReport& rep, double lambda) {
  if (t < 0.0) throw std::invalid_argument("smalldata_psi_curve: t must be >= 0");
  const double lm = std::log(rep.m_infinity);
  if (t <= rep.tau) {
    // below the crossover the dispersive bound is constant m_infinity
    return lm * -std::expm1(-2.0 * lambda * t);
  }
  const double et = std::exp(-2.0 * lambda * t);
  const double etau = std::exp(-2.0 * lambda * rep.tau);
  const double integral = weighted_log_tail(rep.tau, lambda) - weighted_log_tail(t, lambda);
  return lm * (1.0 - etau) + std::log(rep.m_one / std::sqrt(4.0 * kPi)) * (etau - et) - integral;
}

}  // namespace logheat::model
