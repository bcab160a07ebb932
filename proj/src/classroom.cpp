#include "parl/classroom.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parl {

namespace {

int favorable_bits(StateId id) {
  const LearnerState s = learner_state_from(id);
  return static_cast<int>(s.al + s.fl + s.vl);
}

// P(bit' = 1 | bit, action) for one feature under the default model rules.
struct BitEffect {
  double raise = 0.0;  // P(0 -> 1)
  double drop = 0.0;   // P(1 -> 0)
  double p_one(unsigned bit) const { return bit ? 1.0 - drop : raise; }
};

}  // namespace

std::string classroom_action_name(ClassroomAction a) {
  switch (a) {
    case ClassroomAction::Break: return "break";
    case ClassroomAction::EnableVR: return "enable_vr";
    case ClassroomAction::DisableVR: return "disable_vr";
    case ClassroomAction::ChangeContent: return "change_content";
    case ClassroomAction::NoChange: return "no_change";
  }
  return "unknown";
}

LearnerModel LearnerModel::default_model() {
  LearnerModel m;
  for (StateId s = 0; s < kLearnerStateCount; ++s) {
    const LearnerState bits = learner_state_from(s);
    for (std::size_t ai = 0; ai < kClassroomActionCount; ++ai) {
      BitEffect al, fl, vl;
      switch (static_cast<ClassroomAction>(ai)) {
        case ClassroomAction::Break:
          fl.raise = 0.8;
          vl.raise = 0.6;
          al.drop = 0.5;  // attention has to be rebuilt after a pause
          break;
        case ClassroomAction::EnableVR:
          al.raise = 0.7;
          vl.drop = 0.3;  // cybersickness risk
          break;
        case ClassroomAction::DisableVR:
          vl.raise = 0.7;
          al.drop = 0.4;
          break;
        case ClassroomAction::ChangeContent:
          al.raise = 0.5;
          al.drop = 0.5;  // alertness is redrawn
          break;
        case ClassroomAction::NoChange:
          al.drop = 0.2;
          break;
      }
      const double p_al = al.p_one(bits.al);
      const double p_fl = fl.p_one(bits.fl);
      const double p_vl = vl.p_one(bits.vl);
      for (StateId next = 0; next < kLearnerStateCount; ++next) {
        const LearnerState nb = learner_state_from(next);
        const double pa = nb.al ? p_al : 1.0 - p_al;
        const double pf = nb.fl ? p_fl : 1.0 - p_fl;
        const double pv = nb.vl ? p_vl : 1.0 - p_vl;
        m.transition[s][ai][next] = pa * pf * pv;
      }
    }
    const LearnerState b = learner_state_from(s);
    m.quiz_mean[s] = 30.0 + 20.0 * b.al + 15.0 * b.fl + 15.0 * b.vl;
    m.quiz_spread[s] = 10.0;
  }
  m.validate();
  return m;
}

void LearnerModel::validate() const {
  for (StateId s = 0; s < kLearnerStateCount; ++s) {
    for (std::size_t a = 0; a < kClassroomActionCount; ++a) {
      double sum = 0.0;
      for (double p : transition[s][a]) {
        if (p < 0.0 || p > 1.0)
          throw std::invalid_argument("learner model: probability outside [0,1]");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("learner model: transition row (state " +
                                    std::to_string(s) + ", action " + std::to_string(a) +
                                    ") does not sum to 1");
    }
    if (quiz_mean[s] < 0.0 || quiz_mean[s] > 100.0)
      throw std::invalid_argument("learner model: quiz mean outside [0,100]");
    if (quiz_spread[s] < 0.0)
      throw std::invalid_argument("learner model: quiz spread must be >= 0");
  }
  for (StateId a = 0; a < kLearnerStateCount; ++a)
    for (StateId b = 0; b < kLearnerStateCount; ++b)
      if (favorable_bits(a) < favorable_bits(b) && quiz_mean[a] > quiz_mean[b])
        throw std::invalid_argument(
            "learner model: quiz mean must be non-decreasing in favorable bits");
}

LearnerModel LearnerModel::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open learner model: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

LearnerModel LearnerModel::from_text(const std::string& text) {
  LearnerModel m;
  std::array<std::array<bool, kClassroomActionCount>, kLearnerStateCount> seen_t{};
  std::array<bool, kLearnerStateCount> seen_q{};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    const std::string where = "learner model line " + std::to_string(lineno);
    if (tag == "transition") {
      std::size_t s, a;
      if (!(ls >> s >> a) || s >= kLearnerStateCount || a >= kClassroomActionCount)
        throw std::invalid_argument(where + ": bad state/action index");
      for (std::size_t next = 0; next < kLearnerStateCount; ++next)
        if (!(ls >> m.transition[s][a][next]))
          throw std::invalid_argument(where + ": expected 8 probabilities");
      seen_t[s][a] = true;
    } else if (tag == "quiz") {
      std::size_t s;
      if (!(ls >> s) || s >= kLearnerStateCount)
        throw std::invalid_argument(where + ": bad state index");
      if (!(ls >> m.quiz_mean[s] >> m.quiz_spread[s]))
        throw std::invalid_argument(where + ": expected mean and spread");
      seen_q[s] = true;
    } else {
      throw std::invalid_argument(where + ": unknown tag '" + tag + "'");
    }
  }
  for (std::size_t s = 0; s < kLearnerStateCount; ++s) {
    if (!seen_q[s])
      throw std::invalid_argument("learner model: missing quiz row for state " +
                                  std::to_string(s));
    for (std::size_t a = 0; a < kClassroomActionCount; ++a)
      if (!seen_t[s][a])
        throw std::invalid_argument("learner model: missing transition row (state " +
                                    std::to_string(s) + ", action " + std::to_string(a) + ")");
  }
  m.validate();
  return m;
}

std::string LearnerModel::to_text() const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t s = 0; s < kLearnerStateCount; ++s)
    for (std::size_t a = 0; a < kClassroomActionCount; ++a) {
      out << "transition " << s << ' ' << a;
      for (double p : transition[s][a]) out << ' ' << p;
      out << '\n';
    }
  for (std::size_t s = 0; s < kLearnerStateCount; ++s)
    out << "quiz " << s << ' ' << quiz_mean[s] << ' ' << quiz_spread[s] << '\n';
  return out.str();
}

std::pair<StateId, double> step_learner(const LearnerModel& model, StateId s,
                                        ClassroomAction a, bool vr_mode_3d,
                                        RngStream& rng) {
  if (s >= kLearnerStateCount) throw std::out_of_range("step_learner: bad state");
  if (a == ClassroomAction::EnableVR && vr_mode_3d)
    throw std::logic_error("step_learner: enable_vr while already in 3D mode");
  if (a == ClassroomAction::DisableVR && !vr_mode_3d)
    throw std::logic_error("step_learner: disable_vr while already in 2D mode");

  const auto& row = model.transition[s][static_cast<std::size_t>(a)];
  const double u = rng.next_double();
  double acc = 0.0;
  StateId next = kLearnerStateCount - 1;
  for (StateId i = 0; i < kLearnerStateCount; ++i) {
    acc += row[i];
    if (u < acc) {
      next = i;
      break;
    }
  }
  const double mean = model.quiz_mean[next];
  const double spread = model.quiz_spread[next];
  const double quiz =
      std::clamp(mean + (2.0 * rng.next_double() - 1.0) * spread, 0.0, 100.0);
  return {next, quiz};
}

double classroom_reward(double quiz_pct) {
  if (quiz_pct < 0.0 || quiz_pct > 100.0)
    throw std::domain_error("classroom_reward: score outside [0,100]");
  return quiz_pct;
}

double utility_drop(double baseline_mean, double mitigated_mean) {
  if (baseline_mean <= 0.0)
    throw std::domain_error("utility_drop: baseline mean must be positive");
  if (baseline_mean > 100.0 || mitigated_mean < 0.0 || mitigated_mean > 100.0)
    throw std::domain_error("utility_drop: means must lie in [0,100]");
  const double drop = (baseline_mean - mitigated_mean) / baseline_mean * 100.0;
  return drop < 0.0 ? 0.0 : drop;
}

}  // namespace parl
