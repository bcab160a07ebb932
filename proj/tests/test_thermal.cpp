#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "parl/thermal.hpp"

using namespace parl;

namespace {

// Reference integrator: within each thermostat sample the dynamics are
// linear, dT/dt = (a - b*T) / C, so the exact exponential step stands in for
// the production Euler sub-stepping.
double reference_trajectory_step(const HouseParams& p, double t_in_c, HvacMode& mode,
                                 double sp_c, double t_out_c, Activity occupant) {
  const double band = p.band_f / 1.8;
  const int substeps = static_cast<int>(kTickSeconds / p.substep_s);
  for (int i = 0; i < substeps; ++i) {
    switch (mode) {
      case HvacMode::Off:
        if (t_in_c <= sp_c - band) mode = HvacMode::Heat;
        else if (t_in_c >= sp_c + band) mode = HvacMode::Cool;
        break;
      case HvacMode::Heat:
        if (t_in_c >= sp_c) mode = HvacMode::Off;
        break;
      case HvacMode::Cool:
        if (t_in_c <= sp_c) mode = HvacMode::Off;
        break;
    }
    const double mdot_cp = p.airflow_kg_per_s * p.air_cp_j_per_kg_k;
    double a = t_out_c / p.r_eq_k_per_w;
    double b = 1.0 / p.r_eq_k_per_w;
    if (mode == HvacMode::Heat) {
      a += mdot_cp * p.heat_supply_c;
      b += mdot_cp;
    } else if (mode == HvacMode::Cool) {
      a += mdot_cp * p.cool_supply_c;
      b += mdot_cp;
    }
    if (is_at_home(occupant)) {
      // linear only while indoor stays below exhale temperature; the test
      // scenario keeps it there
      const double rmv = activity_traits(occupant).rmv_l_per_min * 1e-3 / 60.0;
      const double k = rmv * 1.2 * 1005.4;
      a += k * 34.0;
      b += k;
    }
    const double t_eq = a / b;
    const double decay = std::exp(-b * p.substep_s / p.capacitance_j_per_k);
    t_in_c = t_eq + (t_in_c - t_eq) * decay;
  }
  return t_in_c;
}

}  // namespace

TEST_SUITE("thermal") {

TEST_CASE("activity ids are the fixed enumeration") {
  CHECK(state_of(Activity::Sleeping) == 0);
  CHECK(state_of(Activity::NotAtHome) == 1);
  CHECK(state_of(Activity::Domestic) == 2);
  CHECK(state_of(Activity::Relaxed) == 3);
  std::set<StateId> ids;
  for (StateId s = 0; s < 4; ++s) {
    CHECK(state_of(activity_of(s)) == s);
    ids.insert(state_of(activity_of(s)));
  }
  CHECK(ids.size() == 4);
  CHECK_THROWS_AS(activity_of(4), std::out_of_range);
}

TEST_CASE("occupant heat follows respiratory volume") {
  CHECK(human_heat(Activity::NotAtHome, 21.0) == 0.0);
  const double sleeping = human_heat(Activity::Sleeping, 21.0);
  const double domestic = human_heat(Activity::Domestic, 21.0);
  CHECK(sleeping > 0.0);
  CHECK(domestic == doctest::Approx(2.0 * sleeping).epsilon(1e-12));
  CHECK(human_heat(Activity::Sleeping, 34.0) == 0.0);
  CHECK(human_heat(Activity::Relaxed, 40.0) == 0.0);  // floored, never cools
}

TEST_CASE("equilibrium with no occupant holds the temperature") {
  HouseParams p;
  HouseState s{70.0, HvacMode::Off};
  const HouseState next = step_house(p, s, 70.0, Activity::NotAtHome, 70.0);
  CHECK(next.t_indoor_f == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(next.mode == HvacMode::Off);
}

TEST_CASE("cold outdoors engages heating within one tick") {
  HouseParams p;
  HouseState s{40.0, HvacMode::Off};
  const HouseState next = step_house(p, s, 70.0, Activity::NotAtHome, 10.0);
  CHECK(next.mode != HvacMode::Off);
  CHECK(next.t_indoor_f > s.t_indoor_f);
}

TEST_CASE("an empty house loses about one degree per tick at 30F gradient") {
  HouseParams p;
  p.band_f = 100.0;  // keep the HVAC out of the way
  HouseState s{70.0, HvacMode::Off};
  const HouseState next = step_house(p, s, 70.0, Activity::NotAtHome, 40.0);
  const double loss = s.t_indoor_f - next.t_indoor_f;
  CHECK(loss > 0.9);
  CHECK(loss < 1.1);
}

TEST_CASE("with HVAC out of range the house decays monotonically to outdoors") {
  HouseParams p;
  p.band_f = 1000.0;
  HouseState s{70.0, HvacMode::Off};
  double prev = s.t_indoor_f;
  for (int i = 0; i < 400; ++i) {
    s = step_house(p, s, 70.0, Activity::NotAtHome, 40.0);
    CHECK(s.t_indoor_f <= prev + 1e-12);
    CHECK(s.t_indoor_f >= 40.0 - 1e-9);
    prev = s.t_indoor_f;
  }
  CHECK(s.t_indoor_f == doctest::Approx(40.0).epsilon(1e-3));
}

TEST_CASE("trajectory matches an exponential reference integrator") {
  // Mild outdoors keeps the relay from chattering, so the trajectories stay
  // pointwise comparable: one heating approach, then a long glide.
  HouseParams p;
  HouseState s{55.0, HvacMode::Off};
  double ref_c = fahrenheit_to_celsius(55.0);
  HvacMode ref_mode = HvacMode::Off;
  const double sp = 70.0, t_out = 69.0;
  for (int step = 0; step < 100; ++step) {
    s = step_house(p, s, sp, Activity::Relaxed, t_out);
    ref_c = reference_trajectory_step(p, ref_c, ref_mode, fahrenheit_to_celsius(sp),
                                      fahrenheit_to_celsius(t_out), Activity::Relaxed);
    CHECK(std::fabs(s.t_indoor_f - celsius_to_fahrenheit(ref_c)) <= 0.1);
  }
}

TEST_CASE("once settled the band holds") {
  HouseParams p;
  HouseState s{55.0, HvacMode::Off};
  for (int i = 0; i < 20; ++i) s = step_house(p, s, 70.0, Activity::Relaxed, 40.0);
  for (int i = 0; i < 100; ++i) {
    s = step_house(p, s, 70.0, Activity::Relaxed, 40.0);
    CHECK(std::fabs(s.t_indoor_f - 70.0) <= 2.5 + 0.1);
  }
}

TEST_CASE("non-finite state is rejected") {
  HouseParams p;
  CHECK_THROWS_AS(step_house(p, {std::nan(""), HvacMode::Off}, 70.0,
                             Activity::Relaxed, 40.0),
                  std::domain_error);
}

TEST_CASE("zero randomness reproduces the base schedule") {
  ActivityProfile profile = default_profile("H2");
  profile.randomness = 0.0;
  RngStream rng(1);
  for (std::size_t slot = 0; slot < kSlotsPerDay; ++slot)
    CHECK(sample_activity(profile, slot, rng) == profile.base[slot]);
}

TEST_CASE("full randomness draws each in-home activity a third of the time") {
  ActivityProfile profile = default_profile("H2");
  profile.randomness = 1.0;
  RngStream rng(2);
  int counts[4] = {};
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    ++counts[state_of(sample_activity(profile, i % kSlotsPerDay, rng))];
  CHECK(counts[state_of(Activity::NotAtHome)] == 0);
  const double expect = n / 3.0;
  const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
  for (Activity a : {Activity::Sleeping, Activity::Domestic, Activity::Relaxed})
    CHECK(std::fabs(counts[state_of(a)] - expect) < 3.0 * sigma);
}

TEST_CASE("a fixed seed reproduces the full schedule") {
  const ActivityProfile profile = default_profile("H3");
  RngStream a(42), b(42);
  for (int i = 0; i < 240 * 40; ++i) {
    const std::size_t slot = static_cast<std::size_t>(i) % kSlotsPerDay;
    CHECK(sample_activity(profile, slot, a) == sample_activity(profile, slot, b));
  }
}

TEST_CASE("human profiles order their randomness") {
  const double h1 = default_profile("H1").randomness;
  const double h2 = default_profile("H2").randomness;
  const double h3 = default_profile("H3").randomness;
  CHECK(h1 < h2);
  CHECK(h2 < h3);
  CHECK_THROWS_AS(default_profile("H4"), std::invalid_argument);
}

TEST_CASE("schedule override parses and validates") {
  const auto base = parse_schedule("sleeping:80,not_at_home:90,domestic:30,relaxed:40");
  CHECK(base[0] == Activity::Sleeping);
  CHECK(base[79] == Activity::Sleeping);
  CHECK(base[80] == Activity::NotAtHome);
  CHECK(base[239] == Activity::Relaxed);
  CHECK_THROWS_AS(parse_schedule("sleeping:240,relaxed:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("sleeping:100"), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule("napping:240"), std::invalid_argument);
}

TEST_CASE("outdoor profile shapes") {
  OutdoorProfile constant{OutdoorProfile::Kind::Constant, 42.0, 0.0, 0.0};
  CHECK(constant.value_f(0) == 42.0);
  CHECK(constant.value_f(120) == 42.0);
  OutdoorProfile sin{OutdoorProfile::Kind::Sinusoid, 0.0, 50.0, 15.0};
  CHECK(sin.value_f(40) == doctest::Approx(35.0).epsilon(1e-9));   // 4 am trough
  CHECK(sin.value_f(160) == doctest::Approx(65.0).epsilon(1e-9));  // 4 pm peak
  for (std::size_t s = 0; s < kSlotsPerDay; ++s) {
    CHECK(sin.value_f(s) >= 35.0 - 1e-9);
    CHECK(sin.value_f(s) <= 65.0 + 1e-9);
  }
}

}  // TEST_SUITE
