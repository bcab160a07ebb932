#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "parl/rng.hpp"

namespace parl {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/// Epsilon-greedy exploration with exponential decay per value update:
/// eps(k) = max(eps_min, eps_max * exp(-decay * k)).
struct ExplorationSchedule {
  double eps_max = 0.9;
  double eps_min = 0.1;
  double decay = 0.01;
  std::uint64_t update_count = 0;

  double epsilon() const {
    const double e = eps_max * std::exp(-decay * static_cast<double>(update_count));
    return e < eps_min ? eps_min : e;
  }
  void note_update() { ++update_count; }
};

/// Dense tabular action-value store with the one-step TD update.
class QTable {
 public:
  QTable(std::size_t n_states, std::size_t n_actions, double alpha, double gamma)
      : n_states_(n_states), n_actions_(n_actions), alpha_(alpha), gamma_(gamma),
        values_(n_states * n_actions, 0.0) {
    if (n_states == 0 || n_actions == 0)
      throw std::invalid_argument("QTable: state and action counts must be positive");
    if (alpha < 0.0 || alpha > 1.0 || gamma < 0.0 || gamma > 1.0)
      throw std::invalid_argument("QTable: alpha and gamma must lie in [0,1]");
  }

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  double value(StateId s, ActionId a) const {
    check_indices(s, a);
    return values_[s * n_actions_ + a];
  }

  void set_value(StateId s, ActionId a, double v) {
    check_indices(s, a);
    values_[s * n_actions_ + a] = v;
  }

  double max_value(StateId s) const {
    check_state(s);
    const double* row = &values_[s * n_actions_];
    double best = row[0];
    for (std::size_t a = 1; a < n_actions_; ++a)
      if (row[a] > best) best = row[a];
    return best;
  }

  /// Argmax over the row; ties resolve to the lowest action index so that
  /// converged policies are reproducible.
  ActionId greedy_action(StateId s) const {
    check_state(s);
    const double* row = &values_[s * n_actions_];
    std::size_t best = 0;
    for (std::size_t a = 1; a < n_actions_; ++a)
      if (row[a] > row[best]) best = a;
    return static_cast<ActionId>(best);
  }

  std::vector<ActionId> greedy_policy() const {
    std::vector<ActionId> pi(n_states_);
    for (std::size_t s = 0; s < n_states_; ++s)
      pi[s] = greedy_action(static_cast<StateId>(s));
    return pi;
  }

  /// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a))
  void update(StateId s, ActionId a, double reward, StateId next) {
    check_indices(s, a);
    check_state(next);
    if (!std::isfinite(reward))
      throw std::domain_error("QTable::update: reward must be finite");
    double& q = values_[s * n_actions_ + a];
    q += alpha_ * (reward + gamma_ * max_value(next) - q);
  }

 private:
  void check_state(StateId s) const {
    if (s >= n_states_) throw std::out_of_range("QTable: state index out of range");
  }
  void check_indices(StateId s, ActionId a) const {
    check_state(s);
    if (a >= n_actions_) throw std::out_of_range("QTable: action index out of range");
  }

  std::size_t n_states_;
  std::size_t n_actions_;
  double alpha_;
  double gamma_;
  std::vector<double> values_;
};

/// Epsilon-greedy draw. Consumes one uniform for the coin and, on
/// exploration, a second one for the action.
inline ActionId select_action(const QTable& table, StateId s,
                              const ExplorationSchedule& schedule, RngStream& rng) {
  if (rng.next_double() < schedule.epsilon())
    return static_cast<ActionId>(rng.next_below(table.n_actions()));
  return table.greedy_action(s);
}

}  // namespace parl
