#include "parl/thermal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace parl {

namespace {

constexpr double kExhaleBreathC = 34.0;
constexpr double kAirDensity = 1.2;      // kg/m3
constexpr double kAirCp = 1005.4;        // J/(kg K)

// met/clo pairs put each activity's comfort optimum near the set-points the
// agent is expected to find: ~60F sleeping, ~71F domestic, ~77F relaxed.
const ActivityTraits kTraits[kActivityCount] = {
    {6.0, 1.35, 2.0},   // Sleeping: light breathing, heavy bedding
    {0.0, 0.0, 0.0},    // NotAtHome: no occupant heat, comfort undefined
    {12.0, 2.0, 0.31},  // Domestic: moderate exercise, light clothing
    {8.0, 1.0, 0.69},   // Relaxed: seated, indoor clothing
};

const Activity kInHome[3] = {Activity::Sleeping, Activity::Domestic, Activity::Relaxed};

}  // namespace

StateId state_of(Activity a) { return static_cast<StateId>(a); }

Activity activity_of(StateId s) {
  if (s >= kActivityCount) throw std::out_of_range("activity_of: state id out of range");
  return static_cast<Activity>(s);
}

std::string activity_name(Activity a) {
  switch (a) {
    case Activity::Sleeping: return "sleeping";
    case Activity::NotAtHome: return "not_at_home";
    case Activity::Domestic: return "domestic";
    case Activity::Relaxed: return "relaxed";
  }
  return "unknown";
}

bool is_at_home(Activity a) { return a != Activity::NotAtHome; }

const ActivityTraits& activity_traits(Activity a) {
  return kTraits[static_cast<std::size_t>(a)];
}

double fahrenheit_to_celsius(double f) { return (f - 32.0) / 1.8; }
double celsius_to_fahrenheit(double c) { return c * 1.8 + 32.0; }

double human_heat(Activity a, double t_indoor_c) {
  if (!is_at_home(a)) return 0.0;
  const double rmv_m3_per_s = activity_traits(a).rmv_l_per_min * 1e-3 / 60.0;
  const double q = rmv_m3_per_s * kAirDensity * kAirCp * (kExhaleBreathC - t_indoor_c);
  return q > 0.0 ? q : 0.0;
}

ActivityProfile default_profile(const std::string& human_id) {
  ActivityProfile p;
  auto fill = [&](std::size_t from, std::size_t to, Activity a) {
    for (std::size_t slot = from; slot < to; ++slot) p.base[slot] = a;
  };
  if (human_id == "H1") {
    // evenly phased, highly regular day
    fill(0, 70, Activity::Sleeping);     // 00:00-07:00
    fill(70, 130, Activity::NotAtHome);  // 07:00-13:00
    fill(130, 180, Activity::Domestic);  // 13:00-18:00
    fill(180, 240, Activity::Relaxed);   // 18:00-24:00
    p.randomness = 0.02;
  } else if (human_id == "H2") {
    // office-hours day
    fill(0, 80, Activity::Sleeping);     // 00:00-08:00
    fill(80, 170, Activity::NotAtHome);  // 08:00-17:00
    fill(170, 200, Activity::Domestic);  // 17:00-20:00
    fill(200, 240, Activity::Relaxed);   // 20:00-24:00
    p.randomness = 0.04;
  } else if (human_id == "H3") {
    // fragmented day plus heavy per-slot substitution
    fill(0, 70, Activity::Sleeping);
    fill(70, 140, Activity::NotAtHome);
    fill(140, 170, Activity::Relaxed);
    fill(170, 190, Activity::Domestic);
    fill(190, 225, Activity::Relaxed);
    fill(225, 240, Activity::Sleeping);
    p.randomness = 0.25;
  } else {
    throw std::invalid_argument("unknown human id: " + human_id + " (expected H1/H2/H3)");
  }
  return p;
}

Activity sample_activity(const ActivityProfile& profile, std::size_t slot, RngStream& rng) {
  if (slot >= kSlotsPerDay) throw std::out_of_range("sample_activity: slot out of range");
  if (rng.next_double() < profile.randomness)
    return kInHome[rng.next_below(3)];
  return profile.base[slot];
}

std::array<Activity, kSlotsPerDay> parse_schedule(const std::string& text) {
  std::array<Activity, kSlotsPerDay> out;
  std::size_t filled = 0;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("schedule: expected 'activity:count', got '" + item + "'");
    const std::string name = item.substr(0, colon);
    const long count = std::stol(item.substr(colon + 1));
    Activity act;
    if (name == "sleeping") act = Activity::Sleeping;
    else if (name == "not_at_home") act = Activity::NotAtHome;
    else if (name == "domestic") act = Activity::Domestic;
    else if (name == "relaxed") act = Activity::Relaxed;
    else throw std::invalid_argument("schedule: unknown activity '" + name + "'");
    if (count <= 0 || filled + static_cast<std::size_t>(count) > kSlotsPerDay)
      throw std::invalid_argument("schedule: slot counts must be positive and sum to 240");
    for (long i = 0; i < count; ++i) out[filled++] = act;
  }
  if (filled != kSlotsPerDay)
    throw std::invalid_argument("schedule: slot counts must sum to 240, got " +
                                std::to_string(filled));
  return out;
}

HouseState step_house(const HouseParams& params, HouseState state, double setpoint_f,
                      Activity occupant, double t_outdoor_f) {
  if (!std::isfinite(state.t_indoor_f) || !std::isfinite(setpoint_f) ||
      !std::isfinite(t_outdoor_f))
    throw std::domain_error("step_house: non-finite temperature");

  double t = fahrenheit_to_celsius(state.t_indoor_f);
  const double sp = fahrenheit_to_celsius(setpoint_f);
  const double t_out = fahrenheit_to_celsius(t_outdoor_f);
  const double band = params.band_f / 1.8;
  const double mdot_cp = params.airflow_kg_per_s * params.air_cp_j_per_kg_k;
  HvacMode mode = state.mode;

  const int substeps = static_cast<int>(kTickSeconds / params.substep_s);
  for (int i = 0; i < substeps; ++i) {
    switch (mode) {
      case HvacMode::Off:
        if (t <= sp - band) mode = HvacMode::Heat;
        else if (t >= sp + band) mode = HvacMode::Cool;
        break;
      case HvacMode::Heat:
        if (t >= sp) mode = HvacMode::Off;
        break;
      case HvacMode::Cool:
        if (t <= sp) mode = HvacMode::Off;
        break;
    }
    double q = 0.0;
    if (mode == HvacMode::Heat) q += mdot_cp * (params.heat_supply_c - t);
    else if (mode == HvacMode::Cool) q += mdot_cp * (params.cool_supply_c - t);
    q += human_heat(occupant, t);
    q -= (t - t_out) / params.r_eq_k_per_w;
    t += params.substep_s * q / params.capacitance_j_per_k;
  }

  return HouseState{celsius_to_fahrenheit(t), mode};
}

double OutdoorProfile::value_f(std::size_t slot_of_day) const {
  if (kind == Kind::Constant) return constant_f;
  const double phase = 2.0 * std::numbers::pi *
                       (static_cast<double>(slot_of_day % kSlotsPerDay) - 40.0) /
                       static_cast<double>(kSlotsPerDay);
  return mean_f - amplitude_f * std::cos(phase);
}

}  // namespace parl
