#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "logheat/experiments.hpp"

#include <cmath>

using namespace logheat;
using namespace logheat::experiments;
using doctest::Approx;

TEST_CASE("gaussian_validation: coarse run passes its own flags, order near 2") {
  GaussianValidationConfig cfg;
  cfg.g = model::GaussianParams(2.0, 1.0);
  cfg.refinement_points = {201, 401, 801};
  cfg.t_end = 0.5;
  cfg.record_every = 0.25;
  cfg.max_rel_error = 5e-3;
  const auto rep = gaussian_validation(cfg);
  CHECK(rep.passed());
  const double order = rep.outcomes.at("observed_order").get<double>();
  CHECK(order == Approx(2.0).epsilon(0.15));
  CHECK(rep.inputs.at("a0").get<double>() == 2.0);  // config echoed

  GaussianValidationConfig bad = cfg;
  bad.max_rel_error = 1e-12;  // unreachable budget flips the flag
  CHECK_FALSE(gaussian_validation(bad).passed());
}

TEST_CASE("dichotomy_sweep: decisive epsilons classify and match ln(1 +- eps)") {
  DichotomySweepConfig cfg;
  cfg.eps_list = {0.5};
  cfg.grid = Grid1D(-8.0, 8.0, 641);
  cfg.t_end = 3.0;
  const auto rep = dichotomy_sweep(cfg);
  CHECK(rep.passed());
  REQUIRE(rep.outcomes.at("runs").size() == 2);
  const auto& minus = rep.outcomes.at("runs")[0];
  const auto& plus = rep.outcomes.at("runs")[1];
  CHECK(minus.at("classified").get<std::string>() == "Decay");
  CHECK(plus.at("classified").get<std::string>() == "Growth");
  CHECK(minus.at("psi_hat_limit").get<double>() ==
        Approx(std::log(0.5)).epsilon(0.02));
  CHECK(plus.at("psi_hat_limit").get<double>() == Approx(std::log(1.5)).epsilon(0.02));
}

TEST_CASE("dichotomy_sweep: parallel execution reproduces the sequential report") {
  DichotomySweepConfig cfg;
  cfg.eps_list = {0.3, 0.5};
  cfg.grid = Grid1D(-8.0, 8.0, 321);
  cfg.t_end = 2.0;
  const auto seq = dichotomy_sweep(cfg);
  cfg.jobs = 4;
  const auto par = dichotomy_sweep(cfg);
  CHECK(seq.outcomes == par.outcomes);
}

TEST_CASE("dichotomy_sweep rejects out-of-range eps") {
  DichotomySweepConfig cfg;
  cfg.eps_list = {1.5};
  CHECK_THROWS_AS(dichotomy_sweep(cfg), std::invalid_argument);
}

TEST_CASE("threshold_bisection: bracket endpoints classify oppositely") {
  ThresholdConfig cfg;
  cfg.grid = Grid1D(-11.0, 11.0, 551);  // coarse fast variant
  cfg.t_end = 4.0;
  cfg.max_probes = 10;
  cfg.target_rel_width = 0.25;
  ThresholdResult res;
  const auto rep = threshold_bisection(cfg, &res);
  CHECK(rep.passed());
  CHECK(res.M_decay == Approx(1.0).epsilon(1e-12));
  CHECK(res.M_growth == Approx(res.K0 + 1.0).epsilon(1e-6));  // unit bump covers the plateau
  CHECK(res.bracket_lo >= res.M_decay);
  CHECK(res.bracket_hi <= res.M_growth);
  CHECK(res.bracket_lo < res.bracket_hi);
  CHECK((res.bracket_hi - res.bracket_lo) / res.bracket_lo <= 0.25);
  CHECK_FALSE(res.ambiguous);
  REQUIRE(res.probes.size() >= 2);
  CHECK(res.probes[0].regime == Regime::Decay);
  CHECK(res.probes[1].regime == Regime::Growth);
  CHECK(static_cast<int>(res.probes.size()) <= cfg.max_probes);
}

TEST_CASE("bounded_domain_rates: slopes near 2 and the norm ordering") {
  BoundedDomainConfig cfg;
  cfg.n_points = 301;  // dx = 0.04, fast variant
  const auto rep = bounded_domain_rates(cfg);
  for (const auto& flag : rep.flags) {
    INFO(flag.name, ": ", flag.detail);
    CHECK(flag.passed);
  }
  const double decay_slope = rep.outcomes.at("decay").at("slope").get<double>();
  const double growth_slope = rep.outcomes.at("growth").at("slope").get<double>();
  CHECK(decay_slope == Approx(2.0).epsilon(0.06));
  CHECK(growth_slope == Approx(2.0).epsilon(0.06));
}

TEST_CASE("bounded_domain_rates rejects a bump leaking outside the domain") {
  BoundedDomainConfig cfg;
  cfg.alpha = -2.0;
  cfg.beta = 2.0;
  CHECK_THROWS_AS(bounded_domain_rates(cfg), std::invalid_argument);
}

TEST_CASE("kpp_spreading: a priori bound, center convergence, accelerating front") {
  KppConfig cfg;
  cfg.grid = Grid1D(-30.0, 30.0, 601);  // dx = 0.1, fast variant
  cfg.t_end = 2.5;
  cfg.center_target = 0.98;
  const auto rep = kpp_spreading(cfg);
  for (const auto& flag : rep.flags) {
    INFO(flag.name, ": ", flag.detail);
    CHECK(flag.passed);
  }
  CHECK(rep.outcomes.at("sup_max").get<double>() <= 1.0 + 1e-9);
  CHECK(rep.outcomes.at("center_final").get<double>() >= 0.98);
  CHECK(rep.outcomes.at("front_monotone_after_transient").get<bool>());
}

TEST_CASE("kpp_spreading validates the amplitude range") {
  KppConfig cfg;
  cfg.amplitude = 1.5;
  CHECK_THROWS_AS(kpp_spreading(cfg), std::invalid_argument);
}

TEST_CASE("experiment reports serialize with echoed inputs and flags") {
  DichotomySweepConfig cfg;
  cfg.eps_list = {0.5};
  cfg.grid = Grid1D(-6.0, 6.0, 241);
  cfg.t_end = 1.5;
  cfg.undecided_band = 0.5;  // short horizon: accept Undecided
  const auto rep = dichotomy_sweep(cfg);
  const auto j = rep.to_json();
  CHECK(j.at("name").get<std::string>() == "dichotomy_sweep");
  CHECK(j.at("inputs").at("eps_list")[0].get<double>() == 0.5);
  CHECK(j.at("flags").size() == rep.flags.size());
  CHECK(j.contains("passed"));
}
