#include "parl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "parl/csv.hpp"
#include "parl/mutual_info.hpp"
#include "parl/pmv.hpp"

namespace parl {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string();
}

double parse_field_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad numeric field in " + what + ": '" + s + "'");
  }
}

struct EnvBundle {
  RngStream rng_env;
  std::unique_ptr<Environment> env;
};

std::unique_ptr<EnvBundle> make_env(const ExperimentConfig& cfg) {
  auto bundle = std::make_unique<EnvBundle>(
      EnvBundle{RngStream(RngStream::derive(cfg.seed, 2)), nullptr});
  if (cfg.environment == EnvKind::Thermal) {
    ThermalEnvOptions opt;
    opt.profile = resolve_profile(cfg.thermal, cfg.thermal.human_id);
    if (cfg.behavior_switch)
      opt.behavior_switch = {cfg.behavior_switch->step,
                             default_profile(cfg.behavior_switch->human_id)};
    opt.house = cfg.thermal.house;
    opt.outdoor = cfg.thermal.outdoor;
    opt.initial_t_indoor_f = cfg.thermal.initial_t_indoor_f;
    opt.settle_tolerance_f = cfg.thermal.settle_tolerance_f;
    opt.settle_timeout_ticks = cfg.thermal.settle_timeout_ticks;
    bundle->env = std::make_unique<ThermalEnv>(opt, bundle->rng_env);
  } else {
    ClassroomEnvOptions opt;
    opt.model = cfg.classroom.model_path.empty()
                    ? LearnerModel::default_model()
                    : LearnerModel::from_file(cfg.classroom.model_path);
    bundle->env = std::make_unique<ClassroomEnv>(opt, bundle->rng_env);
  }
  return bundle;
}

}  // namespace

ActivityProfile resolve_profile(const ThermalConfig& tc, const std::string& human_id) {
  ActivityProfile profile = default_profile(human_id);
  if (human_id == tc.human_id && !tc.schedule_override.empty())
    profile.base = parse_schedule(tc.schedule_override);
  if (human_id == tc.human_id && tc.randomness_override >= 0.0)
    profile.randomness = tc.randomness_override;
  return profile;
}

ExperimentConfig ExperimentConfig::from_config(KeyValueConfig cfg) {
  ExperimentConfig out;

  const std::string env = cfg.get_string("environment", "thermal");
  if (env == "thermal") out.environment = EnvKind::Thermal;
  else if (env == "classroom") out.environment = EnvKind::Classroom;
  else throw std::invalid_argument("config key 'environment': expected thermal|classroom, got '" + env + "'");

  const bool thermal = out.environment == EnvKind::Thermal;
  out.steps = cfg.get_u64("steps", thermal ? 8000 : 500);
  out.seed = cfg.get_u64("seed", 42);

  const std::string mit = cfg.get_string("mitigation", "none");
  if (mit == "none") {
    out.mitigation = MitigationPolicy::none();
  } else if (mit == "randomize") {
    out.mitigation = MitigationPolicy::randomize(cfg.get_double("mitigation.p", 0.5));
  } else if (mit == "fixed_privacy") {
    out.mitigation = MitigationPolicy::fixed_privacy(cfg.get_double("mitigation.zeta", 0.6));
  } else if (mit == "adaparl") {
    out.mitigation = MitigationPolicy::adaparl(cfg.get_double("mitigation.zeta", 0.6),
                                               cfg.get_double("mitigation.lambda_percent", 0.8));
  } else {
    throw std::invalid_argument(
        "config key 'mitigation': expected none|randomize|fixed_privacy|adaparl, got '" + mit + "'");
  }

  out.agent.alpha = cfg.get_double("agent.alpha", 0.01);
  out.agent.gamma = cfg.get_double("agent.gamma", 0.001);
  out.agent.eps_max = cfg.get_double("agent.eps_max", 0.9);
  out.agent.eps_min = cfg.get_double("agent.eps_min", 0.1);
  out.agent.decay = cfg.get_double("agent.decay", 0.01);

  out.privacy.window = cfg.get_u64("privacy.window", 0);
  out.privacy.refit_cadence = cfg.get_u64("privacy.refit_cadence", 50);
  out.privacy.fit_warmup = cfg.get_double("privacy.fit_warmup", thermal ? 240.0 : 50.0);
  out.privacy.fit_window = cfg.get_u64("privacy.fit_window", 0);

  out.thermal.human_id = cfg.get_string("thermal.human", "H2");
  out.thermal.randomness_override = cfg.get_double("thermal.randomness", -1.0);
  out.thermal.schedule_override = cfg.get_string("thermal.schedule", "");
  out.thermal.house.r_eq_k_per_w = cfg.get_double("thermal.r_eq", HouseParams{}.r_eq_k_per_w);
  out.thermal.house.capacitance_j_per_k =
      cfg.get_double("thermal.capacitance", HouseParams{}.capacitance_j_per_k);
  out.thermal.house.airflow_kg_per_s =
      cfg.get_double("thermal.airflow", HouseParams{}.airflow_kg_per_s);
  out.thermal.house.heat_supply_c =
      cfg.get_double("thermal.heat_supply_c", HouseParams{}.heat_supply_c);
  out.thermal.house.cool_supply_c =
      cfg.get_double("thermal.cool_supply_c", HouseParams{}.cool_supply_c);
  out.thermal.house.band_f = cfg.get_double("thermal.band_f", HouseParams{}.band_f);
  out.thermal.house.substep_s = cfg.get_double("thermal.substep_s", HouseParams{}.substep_s);

  const std::string outdoor = cfg.get_string("thermal.t_outdoor", "sinusoid");
  if (outdoor == "constant") out.thermal.outdoor.kind = OutdoorProfile::Kind::Constant;
  else if (outdoor == "sinusoid") out.thermal.outdoor.kind = OutdoorProfile::Kind::Sinusoid;
  else throw std::invalid_argument("config key 'thermal.t_outdoor': expected constant|sinusoid");
  out.thermal.outdoor.constant_f = cfg.get_double("thermal.t_outdoor_constant", 40.0);
  out.thermal.outdoor.mean_f = cfg.get_double("thermal.t_outdoor_mean", 50.0);
  out.thermal.outdoor.amplitude_f = cfg.get_double("thermal.t_outdoor_amplitude", 15.0);
  out.thermal.initial_t_indoor_f = cfg.get_double("thermal.initial_t_indoor", 65.0);
  out.thermal.settle_tolerance_f = cfg.get_double("thermal.settle_tolerance", 2.5);
  out.thermal.settle_timeout_ticks = cfg.get_u64("thermal.settle_timeout", 10);

  out.classroom.model_path = cfg.get_string("classroom.model", "");

  if (cfg.has("behavior_switch.step") || cfg.has("behavior_switch.human")) {
    BehaviorSwitch sw;
    sw.step = cfg.get_u64("behavior_switch.step", 0);
    sw.human_id = cfg.get_string("behavior_switch.human", "H1");
    out.behavior_switch = sw;
  }

  out.sweep.p = cfg.get_double_list("sweep.p");
  out.sweep.zeta = cfg.get_double_list("sweep.zeta");
  out.sweep.lambda_percent = cfg.get_double_list("sweep.lambda_percent");
  out.sweep.seeds = cfg.get_u64("sweep.seeds", 1);
  out.sweep.attack = cfg.get_bool("sweep.attack", false);

  const auto unused = cfg.unused_keys();
  if (!unused.empty())
    throw std::invalid_argument("unknown config key '" + unused.front() + "'");

  out.config_echo = cfg.echo();
  out.validate();
  return out;
}

void ExperimentConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("config key 'steps': must be >= 1");
  mitigation.validate();
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in01(agent.alpha)) throw std::invalid_argument("config key 'agent.alpha': outside [0,1]");
  if (!in01(agent.gamma)) throw std::invalid_argument("config key 'agent.gamma': outside [0,1]");
  if (!in01(agent.eps_max) || !in01(agent.eps_min) || agent.eps_min > agent.eps_max)
    throw std::invalid_argument("config key 'agent.eps_min/eps_max': need 0 <= min <= max <= 1");
  if (agent.decay < 0.0) throw std::invalid_argument("config key 'agent.decay': must be >= 0");
  if (privacy.refit_cadence < 1)
    throw std::invalid_argument("config key 'privacy.refit_cadence': must be >= 1");
  if (environment == EnvKind::Thermal) {
    if (thermal.randomness_override > 1.0)
      throw std::invalid_argument("config key 'thermal.randomness': outside [0,1]");
    if (thermal.house.r_eq_k_per_w <= 0.0 || thermal.house.capacitance_j_per_k <= 0.0)
      throw std::invalid_argument("config key 'thermal.r_eq/capacitance': must be positive");
    if (thermal.settle_timeout_ticks < 1)
      throw std::invalid_argument("config key 'thermal.settle_timeout': must be >= 1");
    (void)default_profile(thermal.human_id);  // validates the id
  }
  if (behavior_switch) {
    if (environment != EnvKind::Thermal)
      throw std::invalid_argument("config key 'behavior_switch.step': requires environment = thermal");
    if (behavior_switch->step >= steps)
      throw std::invalid_argument("config key 'behavior_switch.step': must be < steps");
    (void)default_profile(behavior_switch->human_id);
  }
  if (sweep.seeds < 1) throw std::invalid_argument("config key 'sweep.seeds': must be >= 1");
  for (double v : sweep.p)
    if (!in01(v)) throw std::invalid_argument("config key 'sweep.p': values outside [0,1]");
  for (double v : sweep.zeta)
    if (!in01(v)) throw std::invalid_argument("config key 'sweep.zeta': values outside [0,1]");
  for (double v : sweep.lambda_percent)
    if (!in01(v)) throw std::invalid_argument("config key 'sweep.lambda_percent': values outside [0,1]");
  if (!sweep.p.empty() && mitigation.kind != MitigationKind::Randomize)
    throw std::invalid_argument("config key 'sweep.p': requires mitigation = randomize");
  if (!sweep.zeta.empty() && !mitigation.shapes_reward())
    throw std::invalid_argument("config key 'sweep.zeta': requires a reward-shaping mitigation");
  if (!sweep.lambda_percent.empty() && mitigation.kind != MitigationKind::AdaPARL)
    throw std::invalid_argument("config key 'sweep.lambda_percent': requires mitigation = adaparl");
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();

  RngStream rng_agent(RngStream::derive(cfg.seed, 1));
  RngStream rng_mit(RngStream::derive(cfg.seed, 3));
  auto bundle = make_env(cfg);
  Environment& env = *bundle->env;

  const std::size_t n_states = env.n_states();
  const std::size_t n_actions = env.n_actions();
  QTable table(n_states, n_actions, cfg.agent.alpha, cfg.agent.gamma);
  ExplorationSchedule schedule{cfg.agent.eps_max, cfg.agent.eps_min, cfg.agent.decay, 0};

  const bool shapes = cfg.mitigation.shapes_reward();
  const double mi_cap =
      std::min(std::log2(static_cast<double>(n_states)), std::log2(static_cast<double>(n_actions)));
  MiTracker tracker(n_states, n_actions, cfg.privacy.window);
  LambdaController lambda_ctl({cfg.mitigation.effective_lambda_percent(),
                               cfg.privacy.refit_cadence, cfg.privacy.fit_warmup,
                               cfg.privacy.fit_window, static_cast<double>(cfg.steps),
                               mi_cap});

  RunRecord record;
  record.rows.reserve(cfg.steps);
  record.observable_name = env.observable_name();
  record.n_states = n_states;
  record.n_actions = n_actions;

  StateId state = env.initial_state();
  StateId decision_state = state;
  ActionId chosen = 0;
  bool decision_due = true;

  std::vector<ActionId> greedy = table.greedy_policy();
  std::vector<std::int64_t> greedy_changed_at(n_states, -1);
  std::int64_t last_policy_change = -1;

  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    if (decision_due) {
      decision_state = state;
      chosen = select_action(table, state, schedule, rng_agent);
      env.note_decision(state, chosen);
      decision_due = false;
    }
    const ActionId emitted = emit_action(cfg.mitigation, chosen, n_actions, rng_mit);

    RunRow row;
    row.t = t;
    row.state = state;
    row.chosen_action = chosen;
    row.emitted_action = emitted;

    double mi = 0.0, lambda = 0.0;
    if (shapes) {
      mi = tracker.push(state, emitted);
      lambda = lambda_ctl.observe(static_cast<double>(t), mi);
      row.mi_bits = mi;
      row.lambda_bits = lambda;
    }

    const EnvTick tick = env.step(t, chosen, emitted);

    if (tick.update_ready) {
      decision_due = true;
      if (tick.reward_defined) {
        const double raw_unit = tick.raw_reward / env.reward_unit();
        const double shaped =
            shapes ? shape_reward(cfg.mitigation, raw_unit, mi, lambda) : raw_unit;
        table.update(decision_state, chosen, shaped, tick.next_state);
        schedule.note_update();
        row.raw_reward = tick.raw_reward;
        row.shaped_reward = shaped;

        std::vector<ActionId> now = table.greedy_policy();
        if (now != greedy) {
          for (std::size_t si = 0; si < n_states; ++si)
            if (now[si] != greedy[si]) greedy_changed_at[si] = static_cast<std::int64_t>(t);
          greedy = std::move(now);
          last_policy_change = static_cast<std::int64_t>(t);
        }
      }
    }

    row.epsilon = schedule.epsilon();
    row.observable = tick.observable;
    record.rows.push_back(row);
    state = tick.next_state;
  }

  RunResult result;
  result.record = std::move(record);
  result.metrics = metrics_from_record(result.record);
  result.metrics.convergence_step = last_policy_change + 1;
  result.final_greedy = std::move(greedy);
  result.greedy_changed_at = std::move(greedy_changed_at);
  return result;
}

MetricsSummary metrics_from_record(const RunRecord& record) {
  MetricsSummary m;
  if (record.rows.empty()) return m;

  double obs_sum = 0.0, obs_sq = 0.0;
  std::size_t obs_n = 0;
  double lam_sum = 0.0;
  std::size_t lam_n = 0;
  std::optional<double> lam_last;
  HistoryQueues history;
  history.states.reserve(record.rows.size());
  for (const auto& row : record.rows) {
    if (row.observable) {
      obs_sum += *row.observable;
      obs_sq += *row.observable * *row.observable;
      ++obs_n;
    }
    if (row.lambda_bits) {
      lam_sum += *row.lambda_bits;
      ++lam_n;
      lam_last = row.lambda_bits;
    }
    history.push(row.state, row.emitted_action);
  }

  if (obs_n > 0) {
    const double mean = obs_sum / static_cast<double>(obs_n);
    const double var = obs_sq / static_cast<double>(obs_n) - mean * mean;
    if (record.observable_name == "pmv")
      m.pmv_std = std::sqrt(var > 0.0 ? var : 0.0);
    else
      m.mean_quiz = mean;
  }
  if (lam_n > 0) {
    m.lambda_mean = lam_sum / static_cast<double>(lam_n);
    m.lambda_final = lam_last;
  }
  m.final_mi_bits = mutual_information(history, record.n_states, record.n_actions);
  return m;
}

const char* const kRunCsvHeader =
    "t,state,chosen_action,emitted_action,raw_reward,shaped_reward,mi_bits,"
    "lambda_bits,epsilon,observable";

namespace {

std::string metrics_csv(const MetricsSummary& m) {
  std::string out =
      "pmv_std,mean_quiz,utility_drop,final_mi_bits,lambda_final,lambda_mean,"
      "convergence_step,clustering_accuracy\n";
  std::vector<std::string> row{
      fmt_opt(m.pmv_std),
      fmt_opt(m.mean_quiz),
      fmt_opt(m.utility_drop),
      fmt_opt(m.final_mi_bits),
      fmt_opt(m.lambda_final),
      fmt_opt(m.lambda_mean),
      m.convergence_step ? std::to_string(*m.convergence_step) : std::string(),
      fmt_opt(m.clustering_accuracy)};
  out += csv::join_row(row);
  return out;
}

}  // namespace

void export_run(const RunResult& result, const std::string& config_echo,
                const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + dir);

  const RunRecord& rec = result.record;
  std::string run_csv = std::string(kRunCsvHeader) + "\n";
  for (const auto& r : rec.rows) {
    run_csv += csv::join_row({std::to_string(r.t), std::to_string(r.state),
                              std::to_string(r.chosen_action),
                              std::to_string(r.emitted_action), fmt_opt(r.raw_reward),
                              fmt_opt(r.shaped_reward), fmt_opt(r.mi_bits),
                              fmt_opt(r.lambda_bits), fmt(r.epsilon),
                              fmt_opt(r.observable)});
  }
  csv::write_file(dir + "/run.csv", run_csv);
  csv::write_file(dir + "/metrics.csv", metrics_csv(result.metrics));
  csv::write_file(dir + "/config.echo", config_echo);

  // Threat-model firewall: the adversary file carries time and emitted
  // actions only.
  std::string adv = "day,slot,emitted_action\n";
  for (const auto& r : rec.rows) {
    adv += csv::join_row({std::to_string(r.t / rec.slots_per_day),
                          std::to_string(r.t % rec.slots_per_day),
                          std::to_string(r.emitted_action)});
  }
  csv::write_file(dir + "/adversary-input.csv", adv);
}

RunRecord load_run_record(const std::string& run_csv_path) {
  const auto rows = csv::parse(csv::read_file(run_csv_path));
  if (rows.empty()) throw std::runtime_error("empty run csv: " + run_csv_path);
  const std::vector<std::string> expected = csv::parse(std::string(kRunCsvHeader) + "\n")[0];
  if (rows[0] != expected)
    throw std::runtime_error("unexpected run.csv header in " + run_csv_path);

  RunRecord rec;
  rec.rows.reserve(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 10)
      throw std::runtime_error("run.csv row " + std::to_string(i) + ": expected 10 fields");
    RunRow r;
    r.t = std::stoull(f[0]);
    r.state = static_cast<StateId>(std::stoul(f[1]));
    r.chosen_action = static_cast<ActionId>(std::stoul(f[2]));
    r.emitted_action = static_cast<ActionId>(std::stoul(f[3]));
    auto opt = [&](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_field_double(s, run_csv_path);
    };
    r.raw_reward = opt(f[4]);
    r.shaped_reward = opt(f[5]);
    r.mi_bits = opt(f[6]);
    r.lambda_bits = opt(f[7]);
    r.epsilon = parse_field_double(f[8], run_csv_path);
    r.observable = opt(f[9]);
    rec.rows.push_back(r);
    rec.n_states = std::max<std::size_t>(rec.n_states, r.state + 1);
    rec.n_actions = std::max<std::size_t>(rec.n_actions, r.emitted_action + 1);
    rec.n_actions = std::max<std::size_t>(rec.n_actions, r.chosen_action + 1);
  }
  return rec;
}

ActionTrace load_adversary_input(const std::string& csv_path) {
  const auto rows = csv::parse(csv::read_file(csv_path));
  if (rows.size() < 2) throw std::runtime_error("empty adversary input: " + csv_path);
  if (rows[0] != std::vector<std::string>{"day", "slot", "emitted_action"})
    throw std::runtime_error("unexpected adversary-input.csv header in " + csv_path);
  ActionTrace trace;
  trace.slots_per_day = kSlotsPerDay;
  trace.n_actions = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 3)
      throw std::runtime_error("adversary-input.csv row " + std::to_string(i) +
                               ": expected 3 fields");
    TraceSample s;
    s.day = static_cast<std::uint32_t>(std::stoul(f[0]));
    s.slot = static_cast<std::uint32_t>(std::stoul(f[1]));
    s.action = static_cast<ActionId>(std::stoul(f[2]));
    trace.n_actions = std::max<std::size_t>(trace.n_actions, s.action + 1);
    trace.samples.push_back(s);
  }
  // Declared action range: thermal runs use 21 set-points; smaller alphabets
  // (classroom) keep their observed span.
  trace.n_actions = std::max<std::size_t>(trace.n_actions, 2);
  return trace;
}

namespace {

ActionTrace trace_from_record(const RunRecord& rec) {
  ActionTrace trace;
  trace.slots_per_day = rec.slots_per_day;
  trace.n_actions = rec.n_actions;
  trace.samples.reserve(rec.rows.size());
  for (const auto& r : rec.rows)
    trace.samples.push_back({static_cast<std::uint32_t>(r.t / rec.slots_per_day),
                             static_cast<std::uint32_t>(r.t % rec.slots_per_day),
                             r.emitted_action});
  return trace;
}

double attack_accuracy(const RunRecord& rec, const AttackResult& attack) {
  std::vector<StateId> truth;
  truth.reserve(rec.rows.size());
  for (const auto& r : rec.rows) truth.push_back(r.state);
  return clustering_accuracy(attack.model.assignments, truth, rec.n_states);
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.empty())
    throw std::invalid_argument("config key 'sweep.*': no sweep grid given");

  // Cross product over whichever parameter lists are present.
  const std::vector<double> ones{0.0};
  const auto& ps = cfg.sweep.p.empty() ? ones : cfg.sweep.p;
  const auto& zs = cfg.sweep.zeta.empty() ? ones : cfg.sweep.zeta;
  const auto& ls = cfg.sweep.lambda_percent.empty() ? ones : cfg.sweep.lambda_percent;
  const bool use_p = !cfg.sweep.p.empty();
  const bool use_z = !cfg.sweep.zeta.empty();
  const bool use_l = !cfg.sweep.lambda_percent.empty();

  struct Point {
    std::optional<double> p, zeta, lambda_percent;
  };
  std::vector<Point> grid;
  for (double p : ps)
    for (double z : zs)
      for (double l : ls) {
        Point pt;
        if (use_p) pt.p = p;
        if (use_z) pt.zeta = z;
        if (use_l) pt.lambda_percent = l;
        grid.push_back(pt);
      }

  const std::size_t total = grid.size() * cfg.sweep.seeds;
  std::vector<SweepRow> rows(total);
  std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic)
  for (std::size_t flat = 0; flat < total; ++flat) {
    const std::size_t gi = flat / cfg.sweep.seeds;
    const std::uint64_t rep = flat % cfg.sweep.seeds;
    try {
      ExperimentConfig point_cfg = cfg;
      point_cfg.sweep = SweepSpec{};
      const Point& pt = grid[gi];
      if (pt.p) point_cfg.mitigation.p = *pt.p;
      if (pt.zeta) point_cfg.mitigation.zeta = *pt.zeta;
      if (pt.lambda_percent) point_cfg.mitigation.lambda_percent = *pt.lambda_percent;
      // Replicates get disjoint derived seeds; grid points share them, so a
      // parameter's effect is read off paired runs instead of seed luck.
      point_cfg.seed = RngStream::derive(cfg.seed, rep);

      RunResult res = run_experiment(point_cfg);

      SweepRow row;
      row.index = gi;
      row.p = pt.p;
      row.zeta = pt.zeta;
      row.lambda_percent = pt.lambda_percent;
      row.replicate = rep;
      row.seed = point_cfg.seed;
      row.metrics = res.metrics;

      if (cfg.sweep.attack) {
        const AttackResult attack =
            attack_trace(trace_from_record(res.record), RngStream::derive(point_cfg.seed, 4));
        row.metrics.clustering_accuracy = attack_accuracy(res.record, attack);
      }
      if (cfg.environment == EnvKind::Classroom) {
        ExperimentConfig base_cfg = point_cfg;
        base_cfg.mitigation = MitigationPolicy::none();
        const RunResult base = run_experiment(base_cfg);
        if (base.metrics.mean_quiz && res.metrics.mean_quiz)
          row.metrics.utility_drop =
              utility_drop(*base.metrics.mean_quiz, *res.metrics.mean_quiz);
      }
      rows[flat] = std::move(row);
    } catch (const std::exception& e) {
#pragma omp critical
      if (!first_error)
        first_error = std::make_exception_ptr(std::runtime_error(
            "sweep grid point " + std::to_string(gi) + " replicate " +
            std::to_string(rep) + ": " + e.what()));
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "index,p,zeta,lambda_percent,replicate,seed,pmv_std,mean_quiz,utility_drop,"
      "final_mi_bits,lambda_final,lambda_mean,convergence_step,clustering_accuracy\n";
  for (const auto& r : rows) {
    const MetricsSummary& m = r.metrics;
    out += csv::join_row(
        {std::to_string(r.index), fmt_opt(r.p), fmt_opt(r.zeta),
         fmt_opt(r.lambda_percent), std::to_string(r.replicate), std::to_string(r.seed),
         fmt_opt(m.pmv_std), fmt_opt(m.mean_quiz), fmt_opt(m.utility_drop),
         fmt_opt(m.final_mi_bits), fmt_opt(m.lambda_final), fmt_opt(m.lambda_mean),
         m.convergence_step ? std::to_string(*m.convergence_step) : std::string(),
         fmt_opt(m.clustering_accuracy)});
  }
  return out;
}

AttackOutcome attack_run_dir(const std::string& dir, std::uint64_t seed,
                             std::size_t k_max) {
  const ActionTrace trace = load_adversary_input(dir + "/adversary-input.csv");
  const AttackResult attack = attack_trace(trace, seed, k_max);

  // Scoring happens outside the attacker: truth states come from run.csv.
  const RunRecord rec = load_run_record(dir + "/run.csv");
  if (rec.rows.size() != trace.samples.size())
    throw std::runtime_error("attack: run.csv and adversary-input.csv row counts differ");

  AttackOutcome out;
  out.k = attack.k;
  out.wcss = attack.model.wcss;
  out.wcss_curve = attack.wcss;
  out.accuracy = attack_accuracy(rec, attack);

  std::string assignments = "day,slot,emitted_action,cluster\n";
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    assignments += csv::join_row({std::to_string(s.day), std::to_string(s.slot),
                                  std::to_string(s.action),
                                  std::to_string(attack.model.assignments[i])});
  }
  csv::write_file(dir + "/attack-assignments.csv", assignments);

  std::string summary = "k,wcss,accuracy\n";
  summary += csv::join_row({std::to_string(out.k), fmt(out.wcss), fmt(out.accuracy)});
  csv::write_file(dir + "/attack.csv", summary);
  return out;
}

std::string report_tradeoff(const std::vector<std::string>& sweep_csv_paths) {
  struct Acc {
    std::size_t runs = 0;
    std::map<std::string, std::pair<double, std::vector<double>>> cols;
  };
  std::map<std::vector<std::string>, Acc> groups;
  const std::vector<std::string> metric_cols{"pmv_std", "mean_quiz", "utility_drop",
                                             "final_mi_bits", "clustering_accuracy"};

  for (const auto& path : sweep_csv_paths) {
    const auto rows = csv::parse(csv::read_file(path));
    if (rows.size() < 2) continue;
    const auto& header = rows[0];
    auto col = [&](const std::string& name) -> std::size_t {
      for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
      throw std::runtime_error("sweep csv " + path + ": missing column " + name);
    };
    const std::size_t ip = col("p"), iz = col("zeta"), il = col("lambda_percent");
    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& f = rows[r];
      const std::vector<std::string> key{f[ip], f[iz], f[il]};
      Acc& acc = groups[key];
      ++acc.runs;
      for (const auto& name : metric_cols) {
        const std::string& v = f[col(name)];
        if (!v.empty()) acc.cols[name].second.push_back(parse_field_double(v, path));
      }
    }
  }

  std::string out = "p,zeta,lambda_percent,runs";
  for (const auto& name : metric_cols) out += "," + name + "_mean," + name + "_std";
  out += '\n';
  for (const auto& [key, acc] : groups) {
    std::vector<std::string> row{key[0], key[1], key[2], std::to_string(acc.runs)};
    for (const auto& name : metric_cols) {
      const auto it = acc.cols.find(name);
      if (it == acc.cols.end() || it->second.second.empty()) {
        row.push_back("");
        row.push_back("");
        continue;
      }
      const auto& vals = it->second.second;
      double sum = 0.0;
      for (double v : vals) sum += v;
      const double mean = sum / static_cast<double>(vals.size());
      double var = 0.0;
      for (double v : vals) var += (v - mean) * (v - mean);
      var /= static_cast<double>(vals.size());
      row.push_back(fmt(mean));
      row.push_back(fmt(std::sqrt(var)));
    }
    out += csv::join_row(row);
  }
  return out;
}

}  // namespace parl
