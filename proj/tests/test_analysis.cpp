#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logheat/analysis.hpp"
#include "logheat/solver.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace logheat;
using namespace logheat::analysis;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;

Field sampled_steady(double lambda, const Grid1D& grid) {
  return solver::sample(solver::scaled_steady_datum(lambda, 1.0), grid);
}
}  // namespace

TEST_CASE("norms: zero field, sampled steady state, homogeneity") {
  const Grid1D grid(-10.0, 10.0, 2001);
  const Field zero(grid, Array::Zero(grid.n_points));
  CHECK(norm_l1(zero) == 0.0);
  CHECK(norm_l2(zero) == 0.0);
  CHECK(norm_linf(zero) == 0.0);

  const Field phi = sampled_steady(1.0, grid);
  CHECK(norm_linf(phi) == Approx(std::exp(0.5)).epsilon(1e-15));  // x = 0 is a grid point
  // trapezoid on a smooth rapidly decaying profile is far better than O(dx^2)
  CHECK(norm_l1(phi) == Approx(std::sqrt(2.0 * kPi) * std::exp(0.5)).epsilon(1e-10));
  // ||phi||_2^2 = e int e^{-x^2} = e sqrt(pi)
  CHECK(norm_l2(phi) ==
        Approx(std::sqrt(std::exp(1.0) * std::sqrt(kPi))).epsilon(1e-10));

  testutil::Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const double c = rng.log_uniform(0.1, 10.0);
    Field scaled(grid, c * phi.values);
    CHECK(norm_l1(scaled) == Approx(c * norm_l1(phi)).epsilon(1e-13));
    CHECK(norm_l2(scaled) == Approx(c * norm_l2(phi)).epsilon(1e-13));
    CHECK(norm_linf(scaled) == Approx(c * norm_linf(phi)).epsilon(1e-13));
  }
}

TEST_CASE("energy: zero field, steady-state value, flat potential-free profile") {
  const Grid1D grid(-10.0, 10.0, 2001);
  CHECK(energy(Field(grid, Array::Zero(grid.n_points)), 1.0) == 0.0);

  // closed form for lambda = 1: E[phi] = e sqrt(pi) / 2, cross-checked by
  // high-resolution quadrature of the integrand
  const double closed = std::exp(1.0) * std::sqrt(kPi) / 2.0;
  auto integrand = [](double x) {
    const double phi = std::exp(0.5 - 0.5 * x * x);
    const double dphi = -x * phi;
    return 0.5 * dphi * dphi + 0.5 * phi * phi * (1.0 - 2.0 * std::log(phi));
  };
  const double quad = testutil::simpson(integrand, -10.0, 10.0, 20000);
  CHECK(quad == Approx(closed).epsilon(1e-10));

  const Field phi = sampled_steady(1.0, grid);
  CHECK(energy(phi, 1.0) == Approx(closed).epsilon(1e-4));

  // constant e^{1/2}: zero gradient and pointwise-zero potential density
  const Field flat(grid, Array::Constant(grid.n_points, std::exp(0.5)));
  CHECK(energy(flat, 1.0) == 0.0);
}

TEST_CASE("energy converges at second order on the steady state") {
  const double closed = std::exp(1.0) * std::sqrt(kPi) / 2.0;
  std::vector<std::pair<double, double>> errs;
  for (int n : {251, 501, 1001}) {
    const Grid1D grid(-10.0, 10.0, n);
    errs.emplace_back(grid.dx(), std::abs(energy(sampled_steady(1.0, grid), 1.0) - closed));
  }
  const auto fit = convergence_order(errs);
  CHECK(fit.order == Approx(2.0).epsilon(0.15));
}

TEST_CASE("psi_hat: unit norm, ODE constancy, sentinel") {
  CHECK(psi_hat(2.0, 1.0, 1.0) == 0.0);
  // for the pure ODE from n0 > 1, psi_hat is ln n0 at every time
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const auto n = model::ode_solution(1.7, 1.0, t);
    if (n.saturated) continue;
    CHECK(psi_hat(t, n.value, 1.0) == Approx(std::log(1.7)).epsilon(1e-12));
  }
  CHECK(std::isinf(psi_hat(1.0, 0.0, 1.0)));
  CHECK(psi_hat(1.0, 0.0, 1.0) < 0.0);
}

TEST_CASE("psi_hat of the closed-form Gaussian approaches psi_infinity") {
  const model::GaussianParams g(2.0, 1.0);
  const double sup = model::gaussian_solution(3.0, 0.0, g, 1.0).value;
  const double ph = psi_hat(3.0, sup, 1.0);
  CHECK(std::abs(ph - (-std::log(2.0))) < 2e-3);
}

TEST_CASE("fit_rate: stabilization window semantics") {
  Trajectory traj;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.25 * i;
    traj.times.push_back(t);
    const double psi = -0.3 + 0.5 * std::exp(-2.0 * t);  // exact Gaussian-type series
    traj.psi_hat.push_back(psi);
    traj.linf.push_back(std::exp(psi * std::exp(2.0 * t)));
    traj.l1.push_back(0.0);
    traj.l2.push_back(0.0);
    traj.energy.push_back(0.0);
  }
  const auto fit = fit_rate(traj, 1.0);
  CHECK(fit.stabilized);
  CHECK(fit.psi_limit_estimate == Approx(-0.3).epsilon(1e-9));

  // a drifting series must not report stabilization
  Trajectory drift = traj;
  for (std::size_t i = 0; i < drift.psi_hat.size(); ++i) {
    drift.psi_hat[i] = 0.01 * static_cast<double>(i);
  }
  CHECK_FALSE(fit_rate(drift, 1.0).stabilized);
}

TEST_CASE("classify_trajectory on real runs from scaled steady states") {
  const Grid1D grid(-8.0, 8.0, 321);
  solver::SolverConfig cfg;
  cfg.params = Params(1.0);
  cfg.record_every = 0.05;

  auto run = [&](double factor) {
    const Field u0 = solver::sample(solver::scaled_steady_datum(1.0, factor), grid);
    return solver::solve(u0, cfg, 3.0);
  };
  CHECK(classify_trajectory(run(0.5), 1.0).regime == Regime::Decay);
  CHECK(classify_trajectory(run(1.0), 1.0).regime == Regime::Steady);
  CHECK(classify_trajectory(run(2.0), 1.0).regime == Regime::Growth);
}

TEST_CASE("classify_trajectory honors stop reasons without a long window") {
  Trajectory capped;
  capped.times = {0.0, 0.1};
  capped.linf = {1.0, 2e100};
  capped.psi_hat = {0.0, 100.0};
  capped.l1 = capped.l2 = capped.energy = {0.0, 0.0};
  capped.stop_reason = StopReason::AmplitudeCap;
  CHECK(classify_trajectory(capped, 1.0).regime == Regime::Growth);

  Trajectory dead = capped;
  dead.stop_reason = StopReason::AllBelowFloorTolerance;
  dead.linf = {1.0, 0.0};
  CHECK(classify_trajectory(dead, 1.0).regime == Regime::Decay);

  Trajectory short_run = capped;
  short_run.stop_reason = StopReason::HorizonReached;
  short_run.linf = {1.0, 1.1};
  short_run.psi_hat = {0.0, 0.05};
  CHECK(classify_trajectory(short_run, 1.0).regime == Regime::Undecided);
}

TEST_CASE("front_position: steady-state crossings and interpolation") {
  const Grid1D grid(-10.0, 10.0, 2001);
  const Field phi = sampled_steady(1.0, grid);
  // the peak exactly touches level e^{1/2} at x = 0
  CHECK(front_position(phi, std::exp(0.5)).value() == Approx(0.0).scale(1.0));
  // phi(1) = 1, and x = 1 is a grid point
  CHECK(front_position(phi, 1.0).value() == Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(front_position(phi, 2.0).has_value());

  // interpolated crossing between grid points
  const Grid1D tiny(0.0, 1.0, 3);
  Array v(3);
  v << 1.0, 0.75, 0.0;
  const Field wedge(tiny, v);
  //  level 0.5 between x=0.5 (0.75) and x=1 (0.0): x = 0.5 + 0.5*(0.25/0.75)
  CHECK(front_position(wedge, 0.5).value() == Approx(0.5 + 0.5 * 0.25 / 0.75).epsilon(1e-13));
}

TEST_CASE("convergence_order: power laws and zero-error exclusion") {
  std::vector<std::pair<double, double>> quad, lin, mixed;
  for (double dx : {0.1, 0.05, 0.025, 0.0125}) {
    quad.emplace_back(dx, 3.0 * dx * dx);
    lin.emplace_back(dx, 0.7 * dx);
    // O(dx^2) + O(dt) with dt proportional to dx^2 stays second order
    mixed.emplace_back(dx, 2.0 * dx * dx + 0.5 * (dx * dx));
  }
  CHECK(convergence_order(quad).order == Approx(2.0).epsilon(1e-12));
  CHECK(convergence_order(lin).order == Approx(1.0).epsilon(1e-12));
  CHECK(convergence_order(mixed).order == Approx(2.0).epsilon(1e-12));

  std::vector<std::pair<double, double>> with_zero = quad;
  with_zero.emplace_back(0.2, 0.0);
  const auto fit = convergence_order(with_zero);
  CHECK(fit.excluded_zero_errors == 1);
  CHECK(fit.points_used == 4);
  CHECK(fit.order == Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(convergence_order({{0.1, 0.0}, {0.05, 0.0}}), std::invalid_argument);
}

TEST_CASE("L1/Linf ratio of a Gaussian run approaches sqrt(2 pi / lambda)") {
  const Grid1D grid(-10.0, 10.0, 801);
  solver::SolverConfig cfg;
  cfg.params = Params(1.0);
  cfg.record_every = 0.1;
  const Field u0 = solver::sample(solver::gaussian_datum(2.0, 1.0), grid);
  const Trajectory traj = solver::solve(u0, cfg, 2.0);
  const double ratio = traj.l1.back() / traj.linf.back();
  CHECK(ratio == Approx(std::sqrt(2.0 * kPi)).epsilon(0.01));
}

TEST_CASE("psi_hat stabilizes at rate e^{-2 lambda t} with a small constant") {
  // |psi_hat(t) - psi_inf| <= C e^{-2 lambda t} with C < 5 across the three
  // canonical Gaussian runs at lambda = 1
  const Grid1D grid(-10.0, 10.0, 801);
  for (const auto& [a0, b0] :
       {std::pair{2.0, 1.0}, {0.5, 2.0}, {1.0, std::exp(0.5)}}) {
    const model::GaussianParams g(a0, b0);
    const double pinf = model::psi_infinity(g, 1.0);
    solver::SolverConfig cfg;
    cfg.params = Params(1.0);
    cfg.record_every = 0.1;
    const Field u0 = solver::sample(solver::gaussian_datum(a0, b0), grid);
    const Trajectory traj = solver::solve(u0, cfg, 2.5);
    double c_fitted = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
      c_fitted = std::max(c_fitted, std::abs(traj.psi_hat[k] - pinf) *
                                        std::exp(2.0 * traj.times[k]));
    }
    INFO("a0=", a0, " b0=", b0, " C=", c_fitted);
    CHECK(c_fitted < 5.0);
  }
}

TEST_CASE("energy is non-increasing along solver trajectories") {
  const Grid1D grid(-10.0, 10.0, 1001);
  solver::SolverConfig cfg;
  cfg.params = Params(1.0);
  cfg.record_every = 0.05;
  for (double factor : {0.5, 1.0, 1.5}) {
    const Field u0 = solver::sample(solver::scaled_steady_datum(1.0, factor), grid);
    const Trajectory traj = solver::solve(u0, cfg, 2.0);
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
      CHECK(traj.energy[k + 1] <= traj.energy[k] + 1e-6 * (1.0 + std::abs(traj.energy[k])));
    }
  }
}
