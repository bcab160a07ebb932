#include "parl/env.hpp"

#include <cmath>
#include <stdexcept>

#include "parl/pmv.hpp"

namespace parl {

ThermalEnv::ThermalEnv(const ThermalEnvOptions& opt, RngStream& rng)
    : opt_(opt), rng_(rng) {
  house_.t_indoor_f = opt.initial_t_indoor_f;
  house_.mode = HvacMode::Off;
}

Activity ThermalEnv::activity_at(std::uint64_t t) {
  while (activities_.size() <= t) {
    const std::uint64_t tick = activities_.size();
    const ActivityProfile* profile = &opt_.profile;
    if (opt_.behavior_switch && tick >= opt_.behavior_switch->first)
      profile = &opt_.behavior_switch->second;
    activities_.push_back(sample_activity(*profile, tick % kSlotsPerDay, rng_));
  }
  return activities_[t];
}

StateId ThermalEnv::initial_state() { return state_of(activity_at(0)); }

void ThermalEnv::note_decision(StateId decision_state, ActionId) {
  held_ticks_ = 0;
  decision_at_home_ = is_at_home(activity_of(decision_state));
}

EnvTick ThermalEnv::step(std::uint64_t t, ActionId chosen, ActionId emitted) {
  if (chosen >= kActions || emitted >= kActions)
    throw std::out_of_range("ThermalEnv::step: action out of range");

  const Activity now = activity_at(t);
  const double t_out = opt_.outdoor.value_f(t % kSlotsPerDay);
  house_ = step_house(opt_.house, house_, setpoint_f(emitted), now, t_out);

  EnvTick tick;
  if (is_at_home(now)) {
    const ActivityTraits& traits = activity_traits(now);
    const double t_in_c = fahrenheit_to_celsius(house_.t_indoor_f);
    tick.observable = pmv({t_in_c, t_in_c, opt_.rel_humidity_pct,
                           opt_.air_velocity_ms, traits.met, traits.clo});
  }

  ++held_ticks_;
  const bool settled =
      std::fabs(house_.t_indoor_f - setpoint_f(chosen)) <= opt_.settle_tolerance_f;
  tick.update_ready = settled || held_ticks_ >= opt_.settle_timeout_ticks;
  // A comfort reward exists only when the decision was taken for an
  // occupied house and the occupant is still there when it settles.
  tick.reward_defined = decision_at_home_ && tick.observable.has_value();
  if (tick.update_ready && tick.reward_defined)
    tick.raw_reward = thermal_reward(*tick.observable);
  tick.next_state = state_of(activity_at(t + 1));
  return tick;
}

ClassroomEnv::ClassroomEnv(const ClassroomEnvOptions& opt, RngStream& rng)
    : opt_(opt), rng_(rng), state_(opt.initial_state), vr_3d_(opt.initial_vr_mode_3d) {
  if (state_ >= kLearnerStateCount)
    throw std::invalid_argument("ClassroomEnv: initial state out of range");
}

EnvTick ClassroomEnv::step(std::uint64_t, ActionId, ActionId emitted) {
  if (emitted >= kClassroomActionCount)
    throw std::out_of_range("ClassroomEnv::step: action out of range");

  // Mode-illegal VR toggles act as no_change on the learner and the mode.
  auto action = static_cast<ClassroomAction>(emitted);
  if ((action == ClassroomAction::EnableVR && vr_3d_) ||
      (action == ClassroomAction::DisableVR && !vr_3d_))
    action = ClassroomAction::NoChange;

  const auto [next, quiz] = step_learner(opt_.model, state_, action, vr_3d_, rng_);
  if (action == ClassroomAction::EnableVR) vr_3d_ = true;
  if (action == ClassroomAction::DisableVR) vr_3d_ = false;
  state_ = next;

  EnvTick tick;
  tick.next_state = next;
  tick.observable = quiz;
  tick.update_ready = true;
  tick.raw_reward = classroom_reward(quiz);
  return tick;
}

}  // namespace parl
