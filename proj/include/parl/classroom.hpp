#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>

#include "parl/qlearn.hpp"
#include "parl/rng.hpp"

namespace parl {

constexpr std::size_t kLearnerStateCount = 8;
constexpr std::size_t kClassroomActionCount = 5;

/// Three binary features; 1 is the favorable value on every axis (alert,
/// vigorous, no vertigo). The all-ones state is the best one to learn in.
struct LearnerState {
  unsigned al : 1;
  unsigned fl : 1;
  unsigned vl : 1;
};

inline StateId learner_state_id(LearnerState s) {
  return static_cast<StateId>(s.al << 2 | s.fl << 1 | s.vl);
}
inline LearnerState learner_state_from(StateId id) {
  return LearnerState{static_cast<unsigned>(id >> 2 & 1),
                      static_cast<unsigned>(id >> 1 & 1),
                      static_cast<unsigned>(id & 1)};
}

enum class ClassroomAction : ActionId {
  Break = 0,
  EnableVR = 1,
  DisableVR = 2,
  ChangeContent = 3,
  NoChange = 4,
};

std::string classroom_action_name(ClassroomAction a);

/// Synthetic learner dynamics: a transition distribution per (state, action)
/// and a quiz-score distribution per state (mean plus uniform spread).
struct LearnerModel {
  // transition[s][a][s'] = P(next = s' | state = s, action = a)
  std::array<std::array<std::array<double, kLearnerStateCount>, kClassroomActionCount>,
             kLearnerStateCount>
      transition{};
  std::array<double, kLearnerStateCount> quiz_mean{};
  std::array<double, kLearnerStateCount> quiz_spread{};

  /// Built-in defaults: breaks restore vigor at an attention cost, VR boosts
  /// alertness at a vertigo risk, disabling VR recovers vertigo but costs
  /// alertness, content changes rescramble alertness, inaction lets alertness
  /// decay. Quiz means are 30 + 20*AL + 15*FL + 15*VL with a +-10 spread.
  static LearnerModel default_model();

  /// Load from structured text: `transition <s> <a> <p0> ... <p7>` and
  /// `quiz <s> <mean> <spread>` lines. Validates the full schema.
  static LearnerModel from_file(const std::string& path);
  static LearnerModel from_text(const std::string& text);

  /// Rows must be complete distributions (sum 1 within 1e-12); quiz means in
  /// [0,100]; quiz mean monotone non-decreasing in the favorable-bit count.
  void validate() const;

  std::string to_text() const;
};

/// Sample one stage: next learner state and the quiz percentage scored in it.
/// The VR-mode toggles are only legal in the matching mode; violations throw
/// std::logic_error.
std::pair<StateId, double> step_learner(const LearnerModel& model, StateId s,
                                        ClassroomAction a, bool vr_mode_3d,
                                        RngStream& rng);

/// Reward is the quiz percentage itself.
double classroom_reward(double quiz_pct);

/// Relative utility loss in percent, floored at zero.
double utility_drop(double baseline_mean, double mitigated_mean);

}  // namespace parl
