#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "parl/qlearn.hpp"

using namespace parl;

TEST_SUITE("qlearn") {

TEST_CASE("update from zero table is alpha times reward") {
  QTable q(4, 21, 0.01, 0.001);
  q.update(2, 5, 3.28, 1);
  CHECK(q.value(2, 5) == doctest::Approx(0.0328).epsilon(1e-12));
  // untouched entries stay zero
  CHECK(q.value(2, 4) == 0.0);
  CHECK(q.value(1, 5) == 0.0);
}

TEST_CASE("full overwrite with alpha=1, gamma=0") {
  QTable q(2, 2, 1.0, 0.0);
  q.set_value(0, 0, 1.0);
  q.update(0, 0, 0.0, 1);
  CHECK(q.value(0, 0) == 0.0);
}

TEST_CASE("hand-evaluated update") {
  // single state, row {2,5}: 2 + 0.5*(1 + 0.5*5 - 2) = 2.75
  QTable q(1, 2, 0.5, 0.5);
  q.set_value(0, 0, 2.0);
  q.set_value(0, 1, 5.0);
  q.update(0, 0, 1.0, 0);
  CHECK(q.value(0, 0) == doctest::Approx(2.75).epsilon(1e-12));
}

TEST_CASE("repeated updates contract toward the fixed point") {
  QTable q(2, 2, 0.25, 0.5);
  // fixed (s,a,r,s') with s' row frozen: target = r + gamma * max(next row)
  q.set_value(1, 0, 4.0);
  const double target = 1.0 + 0.5 * 4.0;
  double prev_gap = std::fabs(q.value(0, 0) - target);
  for (int i = 0; i < 20; ++i) {
    q.update(0, 0, 1.0, 1);
    const double gap = std::fabs(q.value(0, 0) - target);
    CHECK(gap == doctest::Approx(prev_gap * (1.0 - q.alpha())).epsilon(1e-12));
    prev_gap = gap;
  }
}

TEST_CASE("epsilon schedule endpoints and decay") {
  ExplorationSchedule s;
  CHECK(s.epsilon() == doctest::Approx(0.9).epsilon(1e-15));
  s.update_count = 100;
  CHECK(s.epsilon() == doctest::Approx(0.9 * std::exp(-1.0)).epsilon(1e-15));
  s.update_count = 1000000;
  CHECK(s.epsilon() == 0.1);
}

TEST_CASE("epsilon is non-increasing and bounded") {
  ExplorationSchedule s;
  double prev = s.epsilon();
  for (int k = 1; k < 2000; ++k) {
    s.update_count = static_cast<std::uint64_t>(k);
    const double e = s.epsilon();
    CHECK(e <= prev + 1e-15);
    CHECK(e >= s.eps_min);
    CHECK(e <= s.eps_max);
    prev = e;
  }
}

TEST_CASE("pure exploitation picks the row argmax") {
  QTable q(1, 3, 0.1, 0.9);
  q.set_value(0, 0, 1.0);
  q.set_value(0, 1, 9.0);
  q.set_value(0, 2, 3.0);
  ExplorationSchedule s{0.0, 0.0, 0.01, 0};
  RngStream rng(1);
  for (int i = 0; i < 10; ++i) CHECK(select_action(q, 0, s, rng) == 1);
}

TEST_CASE("all-zero row ties break to the lowest index") {
  QTable q(1, 4, 0.1, 0.9);
  ExplorationSchedule s{0.0, 0.0, 0.01, 0};
  RngStream rng(7);
  CHECK(select_action(q, 0, s, rng) == 0);
  CHECK(q.greedy_action(0) == 0);
}

TEST_CASE("forced exploration is uniform within 3 sigma") {
  QTable q(1, 3, 0.1, 0.9);
  ExplorationSchedule s{1.0, 1.0, 0.0, 0};
  RngStream rng(99);
  const int n = 100000;
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < n; ++i) ++counts[select_action(q, 0, s, rng)];
  const double expect = n / 3.0;
  const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
  for (int a = 0; a < 3; ++a) CHECK(std::fabs(counts[a] - expect) < 3.0 * sigma);
}

TEST_CASE("greedy policy matches a brute-force row scan") {
  RngStream rng(5);
  QTable q(6, 9, 0.1, 0.9);
  for (StateId s = 0; s < 6; ++s)
    for (ActionId a = 0; a < 9; ++a)
      q.set_value(s, a, rng.next_double() * 10.0 - 5.0);
  const auto policy = q.greedy_policy();
  for (StateId s = 0; s < 6; ++s) {
    ActionId best = 0;
    for (ActionId a = 1; a < 9; ++a)
      if (q.value(s, a) > q.value(s, best)) best = a;
    CHECK(policy[s] == best);
  }
}

TEST_CASE("greedy on trivial and diagonal tables") {
  QTable one(1, 1, 0.1, 0.9);
  CHECK(one.greedy_policy() == std::vector<ActionId>{0});
  QTable diag(4, 4, 0.1, 0.9);
  for (StateId s = 0; s < 4; ++s) diag.set_value(s, s, 1.0);
  for (StateId s = 0; s < 4; ++s) CHECK(diag.greedy_action(s) == s);
}

TEST_CASE("select_action with epsilon 0 equals greedy everywhere") {
  RngStream rng(11);
  QTable q(5, 7, 0.1, 0.9);
  for (StateId s = 0; s < 5; ++s)
    for (ActionId a = 0; a < 7; ++a) q.set_value(s, a, rng.next_double());
  ExplorationSchedule sched{0.0, 0.0, 0.01, 0};
  for (StateId s = 0; s < 5; ++s) CHECK(select_action(q, s, sched, rng) == q.greedy_action(s));
}

TEST_CASE("identical seeds give identical action sequences") {
  QTable q(3, 5, 0.1, 0.9);
  ExplorationSchedule sched;
  RngStream a(1234), b(1234);
  for (int i = 0; i < 200; ++i) {
    const StateId s = static_cast<StateId>(i % 3);
    CHECK(select_action(q, s, sched, a) == select_action(q, s, sched, b));
  }
}

TEST_CASE("contract violations throw") {
  QTable q(2, 3, 0.1, 0.9);
  CHECK_THROWS_AS(q.update(2, 0, 1.0, 0), std::out_of_range);
  CHECK_THROWS_AS(q.update(0, 3, 1.0, 0), std::out_of_range);
  CHECK_THROWS_AS(q.update(0, 0, std::nan(""), 0), std::domain_error);
  CHECK_THROWS_AS(QTable(0, 3, 0.1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(QTable(2, 3, 1.5, 0.9), std::invalid_argument);
}

}  // TEST_SUITE
