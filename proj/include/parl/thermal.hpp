#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parl/qlearn.hpp"
#include "parl/rng.hpp"

namespace parl {

// Dense state ids: Sleeping=0, NotAtHome=1, Domestic=2, Relaxed=3.
enum class Activity : StateId { Sleeping = 0, NotAtHome = 1, Domestic = 2, Relaxed = 3 };

constexpr std::size_t kActivityCount = 4;
constexpr std::size_t kSlotsPerDay = 240;  // 6-minute slots
constexpr double kTickSeconds = 360.0;

StateId state_of(Activity a);
Activity activity_of(StateId s);
std::string activity_name(Activity a);
bool is_at_home(Activity a);

/// Per-activity physiology: respiratory minute volume drives the occupant
/// heat source; met and clo feed the comfort model.
struct ActivityTraits {
  double rmv_l_per_min;
  double met;
  double clo;
};

const ActivityTraits& activity_traits(Activity a);

double fahrenheit_to_celsius(double f);
double celsius_to_fahrenheit(double c);

/// Occupant heat input in watts: breath heat proportional to the respiratory
/// minute volume and the exhale-to-room temperature gradient (exhale breath
/// fixed at 34 degC), floored at zero. NotAtHome contributes nothing.
double human_heat(Activity a, double t_indoor_c);

/// Daily base pattern plus per-slot substitution noise. With probability
/// `randomness` a slot's activity is redrawn uniformly from the three in-home
/// activities (the base itself included), which is what distinguishes the
/// simulated humans from one another.
struct ActivityProfile {
  std::array<Activity, kSlotsPerDay> base;
  double randomness = 0.0;
};

/// H1 (organized) / H2 (medium) / H3 (erratic) default profiles over the
/// same base day: sleep 00-08, away 08-17, domestic 17-20, relaxed 20-24.
ActivityProfile default_profile(const std::string& human_id);

Activity sample_activity(const ActivityProfile& profile, std::size_t slot, RngStream& rng);

/// Parse a full base-day override of the form
/// "sleeping:80,not_at_home:90,domestic:30,relaxed:40" (counts sum to 240).
std::array<Activity, kSlotsPerDay> parse_schedule(const std::string& text);

enum class HvacMode { Off, Heat, Cool };

/// Single-zone lumped-capacitance house. Defaults give a 3 h time constant:
/// an empty 70 degF house at 40 degF outdoors loses about 1 degF per
/// 6-minute step with the HVAC off.
struct HouseParams {
  double r_eq_k_per_w = 10800.0 / 1.478e6;  // equivalent thermal resistance
  double capacitance_j_per_k = 1.478e6;
  double airflow_kg_per_s = 1.0;
  double air_cp_j_per_kg_k = 1005.4;
  double heat_supply_c = 50.0;
  double cool_supply_c = 10.0;
  double band_f = 2.5;      // thermostat fluctuation around the set-point
  double substep_s = 1.0;   // thermostat sampling and Euler step
};

struct HouseState {
  double t_indoor_f = 65.0;
  HvacMode mode = HvacMode::Off;
};

/// Advance the house by one 6-minute control tick under the given set-point.
/// Internally the plant integrates forward-Euler at `substep_s` with the
/// thermostat sampled every substep: heating engages when the temperature
/// falls below setpoint - band and releases at the set-point (cooling
/// mirrored), so the indoor temperature stays within the band once settled.
HouseState step_house(const HouseParams& params, HouseState state, double setpoint_f,
                      Activity occupant, double t_outdoor_f);

/// Outdoor forcing: constant, or a 24 h sinusoid with the coldest point at
/// 04:00.
struct OutdoorProfile {
  enum class Kind { Constant, Sinusoid } kind = Kind::Sinusoid;
  double constant_f = 40.0;
  double mean_f = 50.0;
  double amplitude_f = 15.0;

  double value_f(std::size_t slot_of_day) const;
};

}  // namespace parl
