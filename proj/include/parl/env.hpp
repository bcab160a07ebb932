#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "parl/classroom.hpp"
#include "parl/qlearn.hpp"
#include "parl/rng.hpp"
#include "parl/thermal.hpp"

namespace parl {

struct EnvTick {
  StateId next_state = 0;
  std::optional<double> observable;  // PMV or quiz percentage
  bool update_ready = false;         // the decision cycle completes this tick
  bool reward_defined = true;        // false: complete the cycle without learning
  double raw_reward = 0.0;           // meaningful when update_ready && reward_defined
};

/// Discrete environment driven one 6-minute tick at a time. `chosen` is the
/// agent's intended action, `emitted` the possibly masked one; the plant is
/// actuated with `emitted`.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::size_t n_states() const = 0;
  virtual std::size_t n_actions() const = 0;
  virtual StateId initial_state() = 0;
  virtual void note_decision(StateId decision_state, ActionId chosen) = 0;
  virtual EnvTick step(std::uint64_t t, ActionId chosen, ActionId emitted) = 0;
  virtual std::string observable_name() const = 0;
  /// Scale dividing raw rewards before they reach the learner, so the
  /// privacy penalty (bits) stays commensurate with utility.
  virtual double reward_unit() const = 0;
};

struct ThermalEnvOptions {
  ActivityProfile profile;
  std::optional<std::pair<std::uint64_t, ActivityProfile>> behavior_switch;
  HouseParams house;
  OutdoorProfile outdoor;
  double initial_t_indoor_f = 65.0;
  double settle_tolerance_f = 2.5;
  std::uint64_t settle_timeout_ticks = 10;
  double rel_humidity_pct = 50.0;
  double air_velocity_ms = 0.1;
};

/// Thermal house with a simulated occupant. Actions are set-points 60..80 F.
/// A value update becomes ready when the indoor temperature reaches the
/// chosen set-point (within the settle tolerance) or the settle timeout
/// expires. Comfort is undefined for an empty house, so while the occupant
/// is away the decision cycle completes without a value update.
class ThermalEnv final : public Environment {
 public:
  ThermalEnv(const ThermalEnvOptions& opt, RngStream& rng);

  static constexpr std::size_t kActions = 21;

  std::size_t n_states() const override { return kActivityCount; }
  std::size_t n_actions() const override { return kActions; }
  StateId initial_state() override;
  void note_decision(StateId decision_state, ActionId chosen) override;
  EnvTick step(std::uint64_t t, ActionId chosen, ActionId emitted) override;
  std::string observable_name() const override { return "pmv"; }
  double reward_unit() const override { return 10.0; }

  static double setpoint_f(ActionId a) { return 60.0 + static_cast<double>(a); }

  double t_indoor_f() const { return house_.t_indoor_f; }

 private:
  Activity activity_at(std::uint64_t t);

  ThermalEnvOptions opt_;
  RngStream& rng_;
  HouseState house_;
  bool decision_at_home_ = true;
  std::vector<Activity> activities_;  // drawn lazily in tick order
  std::uint64_t held_ticks_ = 0;
};

struct ClassroomEnvOptions {
  LearnerModel model;
  StateId initial_state = 7;  // all bits favorable
  bool initial_vr_mode_3d = false;
};

/// Synthetic smart-classroom learner. Every tick is a full decision step.
/// A VR toggle that is illegal in the current presentation mode is applied
/// as no_change; the emitted trace is left untouched.
class ClassroomEnv final : public Environment {
 public:
  ClassroomEnv(const ClassroomEnvOptions& opt, RngStream& rng);

  std::size_t n_states() const override { return kLearnerStateCount; }
  std::size_t n_actions() const override { return kClassroomActionCount; }
  StateId initial_state() override { return state_; }
  void note_decision(StateId, ActionId) override {}
  EnvTick step(std::uint64_t t, ActionId chosen, ActionId emitted) override;
  std::string observable_name() const override { return "quiz_pct"; }
  double reward_unit() const override { return 100.0; }

  bool vr_mode_3d() const { return vr_3d_; }

 private:
  ClassroomEnvOptions opt_;
  RngStream& rng_;
  StateId state_;
  bool vr_3d_;
};

}  // namespace parl
