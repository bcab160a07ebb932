// Command-line front end: run | sweep | attack | report.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parl/config.hpp"
#include "parl/csv.hpp"
#include "parl/harness.hpp"
#include "parl/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

parl::ExperimentConfig load_config(const std::string& config_path,
                                   const std::optional<std::uint64_t>& seed,
                                   const std::optional<std::uint64_t>& steps,
                                   const std::vector<std::string>& sets) {
  parl::KeyValueConfig kv = config_path.empty()
                                ? parl::KeyValueConfig()
                                : parl::KeyValueConfig::from_file(config_path);
  for (const auto& kvpair : sets) {
    const auto eq = kvpair.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kvpair + "'");
    kv.set(kvpair.substr(0, eq), kvpair.substr(eq + 1));
  }
  if (seed) kv.set("seed", std::to_string(*seed));
  if (steps) kv.set("steps", std::to_string(*steps));
  return parl::ExperimentConfig::from_config(std::move(kv));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-aware reinforcement learning lab"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", report_out = "tradeoff.csv", run_dir;
  std::optional<std::uint64_t> seed, steps;
  std::vector<std::string> sets;
  std::vector<std::string> sweep_files;
  std::uint64_t attack_seed = 0;
  bool attack_seed_set = false;
  std::size_t k_max = 10;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key = value config file");
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--steps", steps, "override the step count");
    cmd->add_option("--set", sets, "extra key=value overrides")->take_all();
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute one seeded experiment");
  add_common(run_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--threads", threads, "OpenMP threads for grid points");

  CLI::App* attack_cmd =
      app.add_subcommand("attack", "cluster a run directory's emitted actions");
  attack_cmd->add_option("--run", run_dir, "run directory (from `run`)")->required();
  auto* attack_seed_opt =
      attack_cmd->add_option("--seed", attack_seed, "attack seed (default: derived)");
  attack_cmd->add_option("--kmax", k_max, "largest cluster count tried");

  CLI::App* report_cmd =
      app.add_subcommand("report", "aggregate sweep CSVs into a trade-off table");
  report_cmd->add_option("--out", report_out, "output CSV path");
  report_cmd->add_option("files", sweep_files, "sweep.csv files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const parl::ExperimentConfig cfg = load_config(config_path, seed, steps, sets);
      const parl::RunResult result = parl::run_experiment(cfg);
      parl::export_run(result, cfg.config_echo, out_dir);
      std::cout << "run: wrote " << out_dir << "/run.csv (" << result.record.rows.size()
                << " rows)\n";
    } else if (*sweep_cmd) {
#ifdef _OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      const parl::ExperimentConfig cfg = load_config(config_path, seed, steps, sets);
      const auto rows = parl::run_sweep(cfg);
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      parl::csv::write_file(out_dir + "/sweep.csv", parl::sweep_csv(rows));
      parl::csv::write_file(out_dir + "/config.echo", cfg.config_echo);
      std::cout << "sweep: wrote " << out_dir << "/sweep.csv (" << rows.size()
                << " rows)\n";
    } else if (*attack_cmd) {
      attack_seed_set = attack_seed_opt->count() > 0;
      std::uint64_t s = attack_seed;
      if (!attack_seed_set) {
        // Derive from the run's own seed so reruns are reproducible.
        const parl::KeyValueConfig echo =
            parl::KeyValueConfig::from_file(run_dir + "/config.echo");
        parl::KeyValueConfig copy = echo;
        s = parl::RngStream::derive(copy.get_u64("seed", 42), 4);
      }
      const parl::AttackOutcome outcome = parl::attack_run_dir(run_dir, s, k_max);
      std::cout << "attack: k=" << outcome.k << " wcss=" << outcome.wcss
                << " accuracy=" << outcome.accuracy << "\n";
    } else if (*report_cmd) {
      parl::csv::write_file(report_out, parl::report_tradeoff(sweep_files));
      std::cout << "report: wrote " << report_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
