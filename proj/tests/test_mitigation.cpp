#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "parl/mitigation.hpp"

using namespace parl;

TEST_SUITE("mitigation") {

TEST_CASE("reward passes through below the threshold") {
  const auto ada = MitigationPolicy::adaparl(0.6, 0.8);
  CHECK(shape_reward(ada, 10.0, 0.5, 1.0) == 10.0);
}

TEST_CASE("penalized branch follows the two-term form") {
  const auto ada = MitigationPolicy::adaparl(0.6, 0.8);
  CHECK(shape_reward(ada, 10.0, 1.2, 1.0) == doctest::Approx(3.28).epsilon(1e-12));
}

TEST_CASE("fixed privacy penalizes from zero threshold") {
  const auto fixed = MitigationPolicy::fixed_privacy(0.6);
  CHECK(shape_reward(fixed, 10.0, 0.0, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("none and randomize leave the reward alone") {
  CHECK(shape_reward(MitigationPolicy::none(), 7.5, 2.0, 0.0) == 7.5);
  CHECK(shape_reward(MitigationPolicy::randomize(0.9), 7.5, 2.0, 0.0) == 7.5);
}

TEST_CASE("shaped reward is continuous in zeta and switches once in mi") {
  RngStream rng(3);
  for (int i = 0; i < 200; ++i) {
    const double r = rng.next_double() * 20.0 - 10.0;
    const double lambda = rng.next_double();
    const double z = rng.next_double();
    const auto ada = MitigationPolicy::adaparl(z, 0.8);
    // identity below the threshold
    CHECK(shape_reward(ada, r, lambda * 0.99, lambda) == r);
    // continuity in zeta on the penalized branch
    const auto ada2 = MitigationPolicy::adaparl(z + 1e-9 > 1 ? z : z + 1e-9, 0.8);
    const double a = shape_reward(ada, r, lambda + 0.1, lambda);
    const double b = shape_reward(ada2, r, lambda + 0.1, lambda);
    CHECK(std::fabs(a - b) < 1e-7);
  }
}

TEST_CASE("non-finite inputs are rejected") {
  const auto ada = MitigationPolicy::adaparl(0.6, 0.8);
  CHECK_THROWS_AS(shape_reward(ada, std::nan(""), 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(shape_reward(ada, 1.0, INFINITY, 1.0), std::domain_error);
}

TEST_CASE("randomize with p=0 never masks") {
  RngStream rng(5);
  const auto pol = MitigationPolicy::randomize(0.0);
  for (ActionId a = 0; a < 21; ++a) CHECK(emit_action(pol, a, 21, rng) == a);
}

TEST_CASE("none emits the chosen action") {
  RngStream rng(6);
  CHECK(emit_action(MitigationPolicy::none(), 13, 21, rng) == 13);
}

TEST_CASE("randomize with p=1 is uniform within 3 sigma") {
  RngStream rng(7);
  const auto pol = MitigationPolicy::randomize(1.0);
  const int n = 100000;
  int counts[21] = {};
  for (int i = 0; i < n; ++i) ++counts[emit_action(pol, 4, 21, rng)];
  const double expect = n / 21.0;
  const double sigma = std::sqrt(n * (1.0 / 21.0) * (20.0 / 21.0));
  for (int a = 0; a < 21; ++a) CHECK(std::fabs(counts[a] - expect) < 3.0 * sigma);
}

TEST_CASE("lambda is the fitted peak scaled by the percentage") {
  CHECK(current_lambda(0.8, 4.0) == doctest::Approx(3.2).epsilon(1e-12));
  CHECK(current_lambda(0.0, 123.0) == 0.0);
  CHECK(current_lambda(0.8, 1.25) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(current_lambda(0.5, -1.0), std::domain_error);
}

TEST_CASE("lambda is monotone in the percentage for a fixed peak") {
  double prev = -1.0;
  for (double pct = 0.0; pct <= 1.0; pct += 0.05) {
    const double lam = current_lambda(pct, 1.7);
    CHECK(lam >= prev);
    prev = lam;
  }
}

TEST_CASE("controller starts at the cap and refits on cadence") {
  LambdaController::Options opt;
  opt.lambda_percent = 0.8;
  opt.refit_cadence = 10;
  opt.fit_warmup = 0.0;
  opt.horizon = 100.0;
  opt.cap = 2.0;
  LambdaController ctl(opt);
  CHECK(ctl.lambda() == doctest::Approx(1.6));
  // feed a flat trace at 1.0; after the first refit lambda = 0.8 * 1.0
  double lam = 0.0;
  for (int t = 0; t < 25; ++t) lam = ctl.observe(double(t), 1.0);
  CHECK(ctl.has_fit());
  CHECK(lam == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("zero percentage keeps lambda at zero always") {
  LambdaController::Options opt;
  opt.lambda_percent = 0.0;
  opt.refit_cadence = 5;
  opt.horizon = 100.0;
  opt.cap = 2.0;
  LambdaController ctl(opt);
  CHECK(ctl.lambda() == 0.0);
  for (int t = 0; t < 30; ++t) CHECK(ctl.observe(double(t), 0.5 + 0.01 * t) == 0.0);
}

TEST_CASE("policy parameter validation") {
  CHECK_THROWS_AS(MitigationPolicy::randomize(1.5).validate(), std::invalid_argument);
  CHECK_THROWS_AS(MitigationPolicy::fixed_privacy(-0.1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(MitigationPolicy::adaparl(0.5, 2.0).validate(), std::invalid_argument);
  CHECK_NOTHROW(MitigationPolicy::adaparl(0.6, 0.8).validate());
  CHECK_NOTHROW(MitigationPolicy::none().validate());
}

}  // TEST_SUITE
