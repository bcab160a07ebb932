#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "parl/polyfit.hpp"
#include "parl/qlearn.hpp"
#include "parl/rng.hpp"

namespace parl {

enum class MitigationKind { None, Randomize, FixedPrivacy, AdaPARL };

/// Tagged mitigation strategy. Randomize masks the emitted action with a
/// biased coin; FixedPrivacy and AdaPARL shape the reward with the mutual
/// information penalty, differing only in how the threshold is scheduled
/// (FixedPrivacy pins lambda_percent to zero, so it penalizes from step 0).
struct MitigationPolicy {
  MitigationKind kind = MitigationKind::None;
  double p = 0.0;               // Randomize only
  double zeta = 0.0;            // FixedPrivacy, AdaPARL
  double lambda_percent = 0.0;  // AdaPARL only

  static MitigationPolicy none() { return {}; }
  static MitigationPolicy randomize(double p) {
    MitigationPolicy m;
    m.kind = MitigationKind::Randomize;
    m.p = p;
    return m;
  }
  static MitigationPolicy fixed_privacy(double zeta) {
    MitigationPolicy m;
    m.kind = MitigationKind::FixedPrivacy;
    m.zeta = zeta;
    return m;
  }
  static MitigationPolicy adaparl(double zeta, double lambda_percent) {
    MitigationPolicy m;
    m.kind = MitigationKind::AdaPARL;
    m.zeta = zeta;
    m.lambda_percent = lambda_percent;
    return m;
  }

  bool shapes_reward() const {
    return kind == MitigationKind::FixedPrivacy || kind == MitigationKind::AdaPARL;
  }

  /// Threshold fraction actually applied; FixedPrivacy is the
  /// lambda_percent == 0 special case of the same schedule.
  double effective_lambda_percent() const {
    return kind == MitigationKind::AdaPARL ? lambda_percent : 0.0;
  }

  void validate() const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    switch (kind) {
      case MitigationKind::None:
        break;
      case MitigationKind::Randomize:
        if (!in01(p)) throw std::invalid_argument("mitigation.p must lie in [0,1]");
        break;
      case MitigationKind::FixedPrivacy:
        if (!in01(zeta)) throw std::invalid_argument("mitigation.zeta must lie in [0,1]");
        break;
      case MitigationKind::AdaPARL:
        if (!in01(zeta)) throw std::invalid_argument("mitigation.zeta must lie in [0,1]");
        if (!in01(lambda_percent))
          throw std::invalid_argument("mitigation.lambda_percent must lie in [0,1]");
        break;
    }
  }

  std::string name() const {
    switch (kind) {
      case MitigationKind::None: return "none";
      case MitigationKind::Randomize: return "randomize";
      case MitigationKind::FixedPrivacy: return "fixed_privacy";
      case MitigationKind::AdaPARL: return "adaparl";
    }
    return "none";
  }
};

/// Two-branch regularized reward: full reward while the leak estimate stays
/// under the threshold, otherwise (1-zeta)*R - zeta*I. Strategies that do not
/// shape rewards pass the raw value through.
inline double shape_reward(const MitigationPolicy& policy, double raw_reward,
                           double mi, double lambda) {
  if (!std::isfinite(raw_reward) || !std::isfinite(mi) || !std::isfinite(lambda))
    throw std::domain_error("shape_reward: non-finite input");
  if (!policy.shapes_reward()) return raw_reward;
  if (mi < lambda) return raw_reward;
  return (1.0 - policy.zeta) * raw_reward - policy.zeta * mi;
}

/// Cloud-visible action. Under Randomize a biased coin replaces the chosen
/// action with a uniform one; the environment is actuated with the emitted
/// action as well, which is what costs utility.
inline ActionId emit_action(const MitigationPolicy& policy, ActionId chosen,
                            std::size_t n_actions, RngStream& rng) {
  if (chosen >= n_actions) throw std::out_of_range("emit_action: action out of range");
  if (policy.kind == MitigationKind::Randomize && rng.next_double() < policy.p)
    return static_cast<ActionId>(rng.next_below(n_actions));
  return chosen;
}

/// lambda_t = f_max(fitted MI trace) * lambda_percent.
inline double current_lambda(double lambda_percent, double fmax) {
  if (fmax < 0.0) throw std::domain_error("current_lambda: fmax must be >= 0");
  return fmax * lambda_percent;
}

/// Adaptive threshold scheduler. Collects the MI trace, refits the quadratic
/// on a fixed cadence, and exposes lambda_t. Until enough samples exist the
/// theoretical MI cap stands in for the fitted maximum, so early steps are
/// penalized only when lambda_percent is small.
class LambdaController {
 public:
  struct Options {
    double lambda_percent = 0.0;
    std::size_t refit_cadence = 50;   // steps between refits
    double fit_warmup = 0.0;          // ignore samples with t < warmup
    std::size_t fit_window = 0;       // 0 = fit over all retained samples
    double horizon = 0.0;             // last step the fit may be evaluated at
    double cap = 0.0;                 // theoretical MI bound, bits
  };

  explicit LambdaController(const Options& opt)
      : opt_(opt), lambda_(opt.cap * opt.lambda_percent) {}

  /// Record I_t and refit when the cadence comes due. Returns lambda_t.
  double observe(double t, double mi) {
    if (t >= opt_.fit_warmup) {
      trace_.push_back({t, mi});
      if (opt_.fit_window > 0 && trace_.size() > opt_.fit_window)
        trace_.erase(trace_.begin());
    }
    ++steps_;
    if (steps_ % opt_.refit_cadence == 0 && trace_.size() >= 3) {
      fit_ = fit_quadratic(trace_);
      has_fit_ = true;
      lambda_ = current_lambda(opt_.lambda_percent, f_max(fit_, opt_.horizon, opt_.cap));
    }
    return lambda_;
  }

  double lambda() const { return lambda_; }
  bool has_fit() const { return has_fit_; }
  const QuadraticFit& fit() const { return fit_; }

 private:
  Options opt_;
  std::vector<MiSample> trace_;
  QuadraticFit fit_;
  bool has_fit_ = false;
  double lambda_;
  std::size_t steps_ = 0;
};

}  // namespace parl
