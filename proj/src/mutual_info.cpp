#include "parl/mutual_info.hpp"

#include <cmath>
#include <stdexcept>

namespace parl {

namespace {

// Shared cell walk so the tracker and the one-shot estimator sum in the same
// order and produce identical doubles for identical counts.
double mi_from_counts(const std::uint64_t* joint, const std::uint64_t* s_marg,
                      const std::uint64_t* a_marg, std::size_t n_states,
                      std::size_t n_actions, std::size_t n) {
  const double dn = static_cast<double>(n);
  double mi = 0.0;
  for (std::size_t s = 0; s < n_states; ++s) {
    if (s_marg[s] == 0) continue;
    for (std::size_t a = 0; a < n_actions; ++a) {
      const std::uint64_t c = joint[s * n_actions + a];
      if (c == 0) continue;
      const double p_joint = static_cast<double>(c) / dn;
      const double ratio = (static_cast<double>(c) * dn) /
                           (static_cast<double>(s_marg[s]) * static_cast<double>(a_marg[a]));
      mi += p_joint * std::log2(ratio);
    }
  }
  return mi < 0.0 ? 0.0 : mi;
}

}  // namespace

double mutual_information(const HistoryQueues& h, std::size_t n_states,
                          std::size_t n_actions) {
  if (h.states.size() != h.actions.size())
    throw std::invalid_argument("mutual_information: history queues out of lockstep");
  if (h.states.empty())
    throw std::domain_error("mutual_information: empty history");

  std::vector<std::uint64_t> joint(n_states * n_actions, 0);
  std::vector<std::uint64_t> s_marg(n_states, 0);
  std::vector<std::uint64_t> a_marg(n_actions, 0);
  for (std::size_t i = 0; i < h.states.size(); ++i) {
    const StateId s = h.states[i];
    const ActionId a = h.actions[i];
    if (s >= n_states || a >= n_actions)
      throw std::out_of_range("mutual_information: index outside declared alphabet");
    ++joint[s * n_actions + a];
    ++s_marg[s];
    ++a_marg[a];
  }
  return mi_from_counts(joint.data(), s_marg.data(), a_marg.data(), n_states,
                        n_actions, h.states.size());
}

MiTracker::MiTracker(std::size_t n_states, std::size_t n_actions, std::size_t window)
    : n_states_(n_states), n_actions_(n_actions), window_(window),
      joint_(n_states * n_actions, 0), state_marginal_(n_states, 0),
      action_marginal_(n_actions, 0) {
  if (n_states == 0 || n_actions == 0)
    throw std::invalid_argument("MiTracker: alphabet sizes must be positive");
}

double MiTracker::push(StateId s, ActionId a) {
  if (s >= n_states_ || a >= n_actions_)
    throw std::out_of_range("MiTracker::push: index outside declared alphabet");
  ++joint_[s * n_actions_ + a];
  ++state_marginal_[s];
  ++action_marginal_[a];
  ++count_;
  if (window_ > 0) {
    retained_.emplace_back(s, a);
    if (retained_.size() > window_) {
      const auto [os, oa] = retained_.front();
      retained_.pop_front();
      --joint_[os * n_actions_ + oa];
      --state_marginal_[os];
      --action_marginal_[oa];
      --count_;
    }
  }
  return current();
}

double MiTracker::current() const {
  if (count_ == 0) throw std::domain_error("MiTracker::current: empty history");
  return mi_from_counts(joint_.data(), state_marginal_.data(),
                        action_marginal_.data(), n_states_, n_actions_, count_);
}

}  // namespace parl
