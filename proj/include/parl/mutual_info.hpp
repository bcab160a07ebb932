#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "parl/qlearn.hpp"

namespace parl {

/// Lockstep state/action history. Entries are appended once per step.
struct HistoryQueues {
  std::vector<StateId> states;
  std::vector<ActionId> actions;

  void push(StateId s, ActionId a) {
    states.push_back(s);
    actions.push_back(a);
  }
  std::size_t size() const { return states.size(); }
};

/// Plug-in (maximum-likelihood) mutual information in bits between the state
/// and action sequences, estimated from empirical pair frequencies. Zero-mass
/// cells contribute nothing; the result is clamped to be non-negative.
/// Throws std::domain_error on an empty history.
double mutual_information(const HistoryQueues& h, std::size_t n_states,
                          std::size_t n_actions);

/// Incremental pair-count tracker. Maintains the same contingency table a
/// fresh scan of the history would produce, so its estimate is bit-identical
/// to mutual_information() over the retained window, at O(S*A) per step
/// instead of O(n).
class MiTracker {
 public:
  /// window == 0 keeps the full growing history; otherwise only the last
  /// `window` pairs count.
  MiTracker(std::size_t n_states, std::size_t n_actions, std::size_t window = 0);

  /// Record one (state, action) pair and return the updated estimate.
  double push(StateId s, ActionId a);

  /// Estimate over the currently retained pairs.
  double current() const;

  std::size_t size() const { return count_; }
  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  std::size_t window_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> joint_;
  std::vector<std::uint64_t> state_marginal_;
  std::vector<std::uint64_t> action_marginal_;
  std::deque<std::pair<StateId, ActionId>> retained_;
};

}  // namespace parl
