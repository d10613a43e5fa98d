#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "mixmobo/benchmarks.hpp"
#include "mixmobo/optimizer.hpp"

namespace mixmobo {

/// Version stamp written into meta.json beside every CSV set.
constexpr int kCsvSchemaVersion = 1;

/// Campaign configuration driving cmd_run.
struct RunConfig {
  std::string benchmark;
  int budget = 250;  ///< total evaluations including initialization
  int n_init = 50;
  int batch_size = 1;  ///< Q
  int replicates = 10;
  std::vector<std::uint64_t> seeds;  ///< empty: 1..replicates
  double noise_variance = 0.005;
  double eta = 1.0;
  std::vector<AcquisitionKind> acquisitions{AcquisitionKind::EI, AcquisitionKind::PI,
                                            AcquisitionKind::UCB, AcquisitionKind::SMC};
  std::uint64_t instance_seed = 1;
  std::string out_dir = "runs";
  int workers = 1;
  GaConfig ga;  ///< constructed via campaign_ga_defaults()
  HyperSearchConfig hyper;
  double mutation_rate = 0.25;
  double dedup_tolerance = 1e-6;

  RunConfig();

  int epochs() const { return (budget - n_init) / batch_size; }
  std::vector<std::uint64_t> effective_seeds() const;
  /// Throws std::invalid_argument on violated invariants (budget >= n_init,
  /// (budget - n_init) divisible by Q, replicates >= 1, ...).
  void validate() const;
  OptimizerConfig optimizer_config(std::uint64_t seed, int num_objectives) const;
};

/// GA budget sized for 250-evaluation campaigns; the moga defaults target
/// standalone use and are larger than a tight campaign loop needs.
GaConfig campaign_ga_defaults();

/// One optimizer or baseline trajectory on a benchmark instance. Values are
/// always the noiseless truth at the evaluated points; observation noise is
/// only ever fed to the optimizer.
struct ReplicateResult {
  std::uint64_t seed = 0;
  std::vector<MixedVector> points;  ///< evaluation order
  Eigen::MatrixXd true_values;      ///< K x evals
  Eigen::MatrixXd best_so_far;      ///< K x evals, componentwise running max
  std::vector<double> p_opt;        ///< per eval; empty unless global front known
  std::vector<EpochLog> epochs;     ///< empty for the random baseline
  double wall_seconds = 0.0;
};

struct CampaignResult {
  BenchmarkSpec benchmark;
  RunConfig config;
  std::vector<ReplicateResult> mixmobo;   ///< seed order
  std::vector<ReplicateResult> baseline;  ///< seed order
  /// Mean over seeds of the baseline's final best value (single-objective)
  /// or final P-optimum (multi-objective); the reward denominator baseline.
  double random_baseline_mean = 0.0;
};

ReplicateResult run_mixmobo_replicate(const BenchmarkSpec& b, const RunConfig& cfg,
                                      std::uint64_t seed);
ReplicateResult run_random_replicate(const BenchmarkSpec& b, const RunConfig& cfg,
                                     std::uint64_t seed);

/// Runs baseline and MixMOBO replicates for cfg (worker pool of cfg.workers).
CampaignResult run_campaign(const RunConfig& cfg);

/// Reward trajectory for one replicate: normalized reward per eval index
/// (P-optimum based for multi-objective runs).
std::vector<double> reward_trajectory(const CampaignResult& res, const ReplicateResult& rep);

/// CSV column names for this campaign's per-run files.
std::vector<std::string> run_csv_columns(const CampaignResult& res);

/// Per-replicate CSV rows (no header), identical bytes whether written
/// incrementally or in one pass.
std::string render_replicate_rows(const CampaignResult& res, const ReplicateResult& rep);
std::string render_aggregate_csv(const CampaignResult& res);
nlohmann::json campaign_meta(const CampaignResult& res);
std::string render_run_log(const CampaignResult& res);

/// Writes runs.csv, baseline.csv, aggregate.csv, meta.json, run.log into dir
/// (created if missing). Per-run CSVs are flushed replicate by replicate.
void write_campaign(const CampaignResult& res, const std::string& dir);

/// Full campaign: validate, run, write, print a short summary. Returns an
/// exit code (0 success, 1 user error, 2 internal error).
int cmd_run(const RunConfig& cfg, std::ostream& out);

/// Aggregates one or more campaign directories of the same benchmark:
/// prints mean +- sd reward at checkpoints (plus P-optimum trajectory for
/// multi-objective runs) and writes a long-format plot CSV.
int cmd_report(const std::vector<std::string>& paths, const std::string& plot_csv,
               std::ostream& out);

/// Ask/tell session front end over a JSON state file.
/// init: document {"space": ..., "config": ...} -> fresh state file.
/// ask: propose points, print table + JSON, persist pending state.
/// tell: values JSON [[f1..fK] per point] for the outstanding ask.
/// status: epoch/evaluation counters. result: current Pareto set.
int cmd_session_init(const std::string& state_path, const nlohmann::json& doc,
                     std::ostream& out);
int cmd_session_ask(const std::string& state_path, std::ostream& out);
int cmd_session_tell(const std::string& state_path, const nlohmann::json& values,
                     std::ostream& out);
int cmd_session_status(const std::string& state_path, std::ostream& out);
int cmd_session_result(const std::string& state_path, std::ostream& out);

/// Deterministic shortest-round-trip double formatting shared by all CSVs.
std::string format_double(double v);

}  // namespace mixmobo
