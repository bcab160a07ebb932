#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parl/adversary.hpp"
#include "parl/classroom.hpp"
#include "parl/config.hpp"
#include "parl/env.hpp"
#include "parl/mitigation.hpp"
#include "parl/thermal.hpp"

namespace parl {

enum class EnvKind { Thermal, Classroom };

struct AgentHyperparams {
  double alpha = 0.01;
  double gamma = 0.001;
  double eps_max = 0.9;
  double eps_min = 0.1;
  double decay = 0.01;
};

struct PrivacyOptions {
  std::size_t window = 0;         // MI history window; 0 = growing queues
  std::size_t refit_cadence = 50;
  double fit_warmup = 240.0;      // MI samples before this step are not fitted
  std::size_t fit_window = 0;     // 0 = fit over all retained samples
};

struct BehaviorSwitch {
  std::uint64_t step;
  std::string human_id;
};

struct SweepSpec {
  std::vector<double> p;
  std::vector<double> zeta;
  std::vector<double> lambda_percent;
  std::uint64_t seeds = 1;   // replicates per grid point
  bool attack = false;       // run the eavesdropper per grid point
  bool empty() const { return p.empty() && zeta.empty() && lambda_percent.empty(); }
};

struct ThermalConfig {
  std::string human_id = "H2";
  double randomness_override = -1.0;  // <0 keeps the per-human default
  std::string schedule_override;      // "activity:count,..." or empty
  HouseParams house;
  OutdoorProfile outdoor;
  double initial_t_indoor_f = 65.0;
  double settle_tolerance_f = 2.5;
  std::uint64_t settle_timeout_ticks = 10;
};

struct ClassroomConfig {
  std::string model_path;  // empty = built-in default model
};

struct ExperimentConfig {
  EnvKind environment = EnvKind::Thermal;
  std::uint64_t steps = 8000;
  std::uint64_t seed = 42;
  MitigationPolicy mitigation;
  AgentHyperparams agent;
  PrivacyOptions privacy;
  ThermalConfig thermal;
  ClassroomConfig classroom;
  std::optional<BehaviorSwitch> behavior_switch;
  SweepSpec sweep;
  std::string config_echo;

  /// Parse and validate; throws std::invalid_argument naming the offending
  /// key. Unknown keys are rejected.
  static ExperimentConfig from_config(KeyValueConfig cfg);
  void validate() const;
};

struct RunRow {
  std::uint64_t t = 0;
  StateId state = 0;
  ActionId chosen_action = 0;
  ActionId emitted_action = 0;
  std::optional<double> raw_reward;
  std::optional<double> shaped_reward;
  std::optional<double> mi_bits;
  std::optional<double> lambda_bits;
  double epsilon = 0.0;
  std::optional<double> observable;
};

struct RunRecord {
  std::vector<RunRow> rows;
  std::string observable_name;  // "pmv" or "quiz_pct"
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  std::size_t slots_per_day = kSlotsPerDay;
};

struct MetricsSummary {
  std::optional<double> pmv_std;        // thermal utility (occupied steps)
  std::optional<double> mean_quiz;      // classroom utility
  std::optional<double> utility_drop;   // vs a paired unmitigated run
  std::optional<double> final_mi_bits;  // plug-in MI over the whole trace
  std::optional<double> lambda_final;
  std::optional<double> lambda_mean;
  std::optional<std::int64_t> convergence_step;  // needs the in-run greedy trace
  std::optional<double> clustering_accuracy;     // filled by the attack
};

struct RunResult {
  RunRecord record;
  MetricsSummary metrics;
  std::vector<ActionId> final_greedy;          // greedy action per state at the end
  std::vector<std::int64_t> greedy_changed_at; // last step each state's greedy flipped; -1 = never
};

/// One seeded experiment following the per-step order: select, emit, push
/// histories, estimate MI, schedule lambda, step the environment, shape the
/// reward, update. Bitwise deterministic for a given config.
RunResult run_experiment(const ExperimentConfig& cfg);

/// Everything except convergence_step recomputed from the record alone.
MetricsSummary metrics_from_record(const RunRecord& record);

/// run.csv column order; the header is part of the on-disk contract.
extern const char* const kRunCsvHeader;

void export_run(const RunResult& result, const std::string& config_echo,
                const std::string& dir);
RunRecord load_run_record(const std::string& run_csv_path);
ActionTrace load_adversary_input(const std::string& csv_path);

struct SweepRow {
  std::size_t index = 0;
  std::optional<double> p;
  std::optional<double> zeta;
  std::optional<double> lambda_percent;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;
  MetricsSummary metrics;
};

/// One run per grid point x replicate, seeds derived from the base seed by
/// flat index. Grid points run in parallel when OpenMP is enabled.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct AttackOutcome {
  std::size_t k = 0;
  double wcss = 0.0;
  double accuracy = 0.0;
  std::vector<double> wcss_curve;
};

/// Eavesdropper pipeline over an exported run directory; accuracy is scored
/// against the true states from run.csv afterwards.
AttackOutcome attack_run_dir(const std::string& dir, std::uint64_t seed,
                             std::size_t k_max = 10);

/// Aggregate sweep CSVs into a trade-off table grouped by parameter value.
std::string report_tradeoff(const std::vector<std::string>& sweep_csv_paths);

ActivityProfile resolve_profile(const ThermalConfig& tc, const std::string& human_id);

}  // namespace parl
