#include "mixmobo/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mixmobo/moga.hpp"

namespace fs = std::filesystem;

namespace mixmobo {

namespace {

// Substream tags under Rng(replicate_seed), disjoint from the optimizer's tags.
enum HarnessStream : std::uint64_t {
  kBaselineStream = 101,
  kNoiseStream = 102,
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Best-so-far trajectories and, when the global front is known, the
// P-optimum of the set of points found so far. The found-set reading keeps
// the trajectory non-decreasing: each new point can only lower the minimum
// Hamming distances, so the running minima are maintained incrementally.
void finalize_metrics(const BenchmarkSpec& b, ReplicateResult& r) {
  const int n = static_cast<int>(r.true_values.cols());
  r.best_so_far = r.true_values;
  for (int j = 1; j < n; ++j)
    r.best_so_far.col(j) = r.best_so_far.col(j).cwiseMax(r.best_so_far.col(j - 1));
  if (b.num_objectives > 1 && !b.global_pareto.empty()) {
    const int g = static_cast<int>(b.global_pareto.size());
    std::vector<int> min_dist(g, std::numeric_limits<int>::max());
    r.p_opt.resize(n);
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int i = 0; i < g; ++i) {
        min_dist[i] = std::min(min_dist[i], hamming_distance(r.points[j], b.global_pareto[i]));
        sum += std::exp(-static_cast<double>(min_dist[i]));
      }
      r.p_opt[j] = sum / g;
    }
  }
}

double replicate_final_score(const BenchmarkSpec& b, const ReplicateResult& r) {
  if (b.num_objectives == 1) return r.best_so_far(0, r.best_so_far.cols() - 1);
  return r.p_opt.back();
}

// Reward numerator target: the global best value, or the perfect P-optimum
// for multi-objective runs.
double reward_target(const BenchmarkSpec& b) {
  if (b.num_objectives == 1) return b.global_best[0];
  return p_optimum(b.global_pareto, b.global_pareto);
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f.flush()) throw std::runtime_error("failed writing " + path.string());
}

// Runs fn(i) for i in [0, count) on a small worker pool and invokes
// on_done(i, result) strictly in index order as prefixes complete.
void ordered_parallel_for(int count, int workers,
                          const std::function<ReplicateResult(int)>& fn,
                          const std::function<void(int, ReplicateResult&)>& on_done) {
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) {
      ReplicateResult r = fn(i);
      on_done(i, r);
    }
    return;
  }
  std::vector<std::optional<ReplicateResult>> slots(count);
  std::mutex mu;
  std::condition_variable cv;
  int next_claim = 0;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      int idx;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure || next_claim >= count) return;
        idx = next_claim++;
      }
      try {
        ReplicateResult r = fn(idx);
        std::lock_guard<std::mutex> lock(mu);
        slots[idx] = std::move(r);
        cv.notify_all();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        failure = std::current_exception();
        cv.notify_all();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(workers, count); ++t) pool.emplace_back(worker);
  {
    std::unique_lock<std::mutex> lock(mu);
    for (int i = 0; i < count; ++i) {
      cv.wait(lock, [&] { return slots[i].has_value() || failure; });
      if (failure) break;
      ReplicateResult r = std::move(*slots[i]);
      slots[i].reset();
      lock.unlock();
      on_done(i, r);
      lock.lock();
    }
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

GaConfig campaign_ga_defaults() {
  GaConfig ga;
  ga.population_size = 40;
  ga.generations = 24;
  return ga;
}

// Campaign defaults trade a little per-epoch search depth for wall time; the
// module-level defaults stay deeper for one-off use.
RunConfig::RunConfig() : ga(campaign_ga_defaults()) { hyper.budget = 32; }

std::vector<std::uint64_t> RunConfig::effective_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out(replicates);
  std::iota(out.begin(), out.end(), 1);
  return out;
}

void RunConfig::validate() const {
  require(!benchmark.empty(), "run config: benchmark name required");
  require(n_init >= 1, "run config: init count must be >= 1");
  require(budget >= n_init, "run config: budget must be >= init count");
  require(batch_size >= 1, "run config: q must be >= 1");
  require((budget - n_init) % batch_size == 0,
          "run config: budget - init must be divisible by q");
  require(seeds.empty() ? replicates >= 1 : true, "run config: replicates must be >= 1");
  require(noise_variance >= 0.0, "run config: noise variance must be >= 0");
  require(eta > 0.0, "run config: eta must be > 0");
  require(!acquisitions.empty(), "run config: at least one acquisition required");
  require(workers >= 1, "run config: workers must be >= 1");
  require(mutation_rate >= 0.0 && mutation_rate <= 1.0,
          "run config: mutation rate must be in [0, 1]");
  require(dedup_tolerance >= 0.0, "run config: dedup tolerance must be >= 0");
}

OptimizerConfig RunConfig::optimizer_config(std::uint64_t seed, int num_objectives) const {
  OptimizerConfig cfg;
  cfg.n_init = n_init;
  cfg.epochs = epochs();
  cfg.batch_size = batch_size;
  cfg.mutation_rate = mutation_rate;
  cfg.dedup_tolerance = dedup_tolerance;
  cfg.portfolio = acquisitions;
  cfg.ga = ga;
  cfg.eta = eta;
  cfg.seed = seed;
  cfg.num_objectives = num_objectives;
  cfg.hyper = hyper;
  return cfg;
}

ReplicateResult run_mixmobo_replicate(const BenchmarkSpec& b, const RunConfig& cfg,
                                      std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicateResult r;
  r.seed = seed;
  std::vector<Eigen::VectorXd> trace;

  Rng noise_rng = Rng(seed).child(kNoiseStream);
  const double sd = std::sqrt(cfg.noise_variance);
  const BlackBox observed = [&](const MixedVector& w) -> Eigen::VectorXd {
    const Eigen::VectorXd truth = b.truth(w);
    r.points.push_back(w);
    trace.push_back(truth);
    Eigen::VectorXd noisy = truth;
    for (int k = 0; k < noisy.size(); ++k)
      noisy[k] += b.output_scales[k] * noise_rng.normal(0.0, sd);
    return noisy;
  };

  OptimizerState st = run_optimization(b.space, cfg.optimizer_config(seed, b.num_objectives),
                                       observed);
  r.epochs = std::move(st.logs);
  r.true_values.resize(b.num_objectives, static_cast<int>(trace.size()));
  for (std::size_t j = 0; j < trace.size(); ++j)
    r.true_values.col(static_cast<int>(j)) = trace[j];
  finalize_metrics(b, r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

ReplicateResult run_random_replicate(const BenchmarkSpec& b, const RunConfig& cfg,
                                     std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicateResult r;
  r.seed = seed;
  const int evals = cfg.n_init + cfg.epochs() * cfg.batch_size;
  Rng rng = Rng(seed).child(kBaselineStream);
  r.true_values.resize(b.num_objectives, evals);
  for (int j = 0; j < evals; ++j) {
    const MixedVector w = sample_uniform(b.space, rng);
    r.points.push_back(w);
    r.true_values.col(j) = b.truth(w);
  }
  finalize_metrics(b, r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CampaignResult run_campaign(const RunConfig& cfg) {
  cfg.validate();
  CampaignResult res;
  res.benchmark = make_benchmark(cfg.benchmark, cfg.instance_seed, cfg.noise_variance);
  res.config = cfg;
  const auto seeds = cfg.effective_seeds();

  std::vector<double> finals;
  for (std::uint64_t s : seeds) {
    res.baseline.push_back(run_random_replicate(res.benchmark, cfg, s));
    finals.push_back(replicate_final_score(res.benchmark, res.baseline.back()));
  }
  res.random_baseline_mean = mean_of(finals);

  res.mixmobo.resize(seeds.size());
  ordered_parallel_for(
      static_cast<int>(seeds.size()), cfg.workers,
      [&](int i) { return run_mixmobo_replicate(res.benchmark, cfg, seeds[i]); },
      [&](int i, ReplicateResult& r) { res.mixmobo[i] = std::move(r); });
  return res;
}

std::vector<double> reward_trajectory(const CampaignResult& res, const ReplicateResult& rep) {
  const BenchmarkSpec& b = res.benchmark;
  const double target = reward_target(b);
  const int n = static_cast<int>(rep.true_values.cols());
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    const double score = b.num_objectives == 1 ? rep.best_so_far(0, j) : rep.p_opt[j];
    out[j] = normalized_reward(score, res.random_baseline_mean, target);
  }
  return out;
}

std::vector<std::string> run_csv_columns(const CampaignResult& res) {
  std::vector<std::string> cols = {"seed", "eval"};
  for (int k = 1; k <= res.benchmark.num_objectives; ++k)
    cols.push_back("best_f_" + std::to_string(k));
  cols.push_back("normalized_reward");
  if (res.benchmark.num_objectives > 1) cols.push_back("p_optimum");
  return cols;
}

std::string render_replicate_rows(const CampaignResult& res, const ReplicateResult& rep) {
  const auto rewards = reward_trajectory(res, rep);
  std::string out;
  for (int j = 0; j < static_cast<int>(rep.true_values.cols()); ++j) {
    out += std::to_string(rep.seed);
    out += ',';
    out += std::to_string(j + 1);
    for (int k = 0; k < res.benchmark.num_objectives; ++k) {
      out += ',';
      out += format_double(rep.best_so_far(k, j));
    }
    out += ',';
    out += format_double(rewards[j]);
    if (res.benchmark.num_objectives > 1) {
      out += ',';
      out += format_double(rep.p_opt[j]);
    }
    out += '\n';
  }
  return out;
}

std::string render_aggregate_csv(const CampaignResult& res) {
  const bool multi = res.benchmark.num_objectives > 1;
  std::string out = "eval,reward_mean,reward_sd";
  if (multi) out += ",p_optimum_mean,p_optimum_sd";
  out += '\n';
  std::vector<std::vector<double>> rewards;
  for (const auto& rep : res.mixmobo) rewards.push_back(reward_trajectory(res, rep));
  const int evals = static_cast<int>(res.mixmobo.front().true_values.cols());
  for (int j = 0; j < evals; ++j) {
    std::vector<double> r, p;
    for (std::size_t i = 0; i < res.mixmobo.size(); ++i) {
      r.push_back(rewards[i][j]);
      if (multi) p.push_back(res.mixmobo[i].p_opt[j]);
    }
    out += std::to_string(j + 1);
    out += ',';
    out += format_double(mean_of(r));
    out += ',';
    out += format_double(sd_of(r));
    if (multi) {
      out += ',';
      out += format_double(mean_of(p));
      out += ',';
      out += format_double(sd_of(p));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json campaign_meta(const CampaignResult& res) {
  auto acq = nlohmann::json::array();
  for (auto kind : res.config.acquisitions) acq.push_back(acquisition_name(kind));
  std::vector<double> global(res.benchmark.global_best.begin(), res.benchmark.global_best.end());
  return nlohmann::json{{"schema_version", kCsvSchemaVersion},
                        {"benchmark", res.benchmark.name},
                        {"num_objectives", res.benchmark.num_objectives},
                        {"budget", res.config.budget},
                        {"n_init", res.config.n_init},
                        {"batch_size", res.config.batch_size},
                        {"seeds", res.config.effective_seeds()},
                        {"noise_variance", res.config.noise_variance},
                        {"eta", res.config.eta},
                        {"acquisitions", acq},
                        {"instance_seed", res.config.instance_seed},
                        {"global_best", global},
                        {"random_baseline_mean", res.random_baseline_mean},
                        {"columns", run_csv_columns(res)}};
}

std::string render_run_log(const CampaignResult& res) {
  std::string out = "campaign benchmark=" + res.benchmark.name +
                    " replicates=" + std::to_string(res.mixmobo.size()) + "\n";
  for (const auto& rep : res.mixmobo) {
    out += "seed=" + std::to_string(rep.seed) +
           " wall_seconds=" + format_double(rep.wall_seconds) + "\n";
    for (const auto& log : rep.epochs) {
      std::vector<std::string> probs, chosen;
      for (int l = 0; l < log.hedge_probabilities.size(); ++l)
        probs.push_back(format_double(log.hedge_probabilities[l]));
      for (int c : log.chosen_acquisitions)
        chosen.push_back(acquisition_name(res.config.acquisitions[c]));
      out += "seed=" + std::to_string(rep.seed) + " epoch=" + std::to_string(log.epoch) +
             " probs=" + join(probs, '|') + " chosen=" + join(chosen, '|') +
             " fallback=" + (log.gp_fallback ? "1" : "0") + "\n";
      for (const auto& w : log.warnings)
        out += "seed=" + std::to_string(rep.seed) + " epoch=" + std::to_string(log.epoch) +
               " warning=" + w + "\n";
    }
  }
  return out;
}

void write_campaign(const CampaignResult& res, const std::string& dir) {
  fs::create_directories(dir);
  const std::string header = join(run_csv_columns(res), ',') + "\n";
  std::string runs = header;
  for (const auto& rep : res.mixmobo) runs += render_replicate_rows(res, rep);
  std::string base = header;
  for (const auto& rep : res.baseline) base += render_replicate_rows(res, rep);
  write_text_file(fs::path(dir) / "runs.csv", runs);
  write_text_file(fs::path(dir) / "baseline.csv", base);
  write_text_file(fs::path(dir) / "aggregate.csv", render_aggregate_csv(res));
  write_text_file(fs::path(dir) / "meta.json", campaign_meta(res).dump(2) + "\n");
  write_text_file(fs::path(dir) / "run.log", render_run_log(res));
}

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  return guarded([&]() {
    cfg.validate();
    CampaignResult res;
    res.benchmark = make_benchmark(cfg.benchmark, cfg.instance_seed, cfg.noise_variance);
    res.config = cfg;
    const auto seeds = cfg.effective_seeds();

    fs::create_directories(cfg.out_dir);
    const std::string header = join(run_csv_columns(res), ',') + "\n";

    std::vector<double> finals;
    std::string base = header;
    for (std::uint64_t s : seeds) {
      res.baseline.push_back(run_random_replicate(res.benchmark, cfg, s));
      finals.push_back(replicate_final_score(res.benchmark, res.baseline.back()));
    }
    res.random_baseline_mean = mean_of(finals);
    for (const auto& rep : res.baseline) base += render_replicate_rows(res, rep);
    write_text_file(fs::path(cfg.out_dir) / "baseline.csv", base);

    // Per-run CSV is flushed replicate by replicate so interruptions keep
    // the completed prefix.
    std::ofstream runs(fs::path(cfg.out_dir) / "runs.csv", std::ios::binary);
    if (!runs) throw std::runtime_error("cannot open runs.csv for writing");
    runs << header << std::flush;
    res.mixmobo.resize(seeds.size());
    ordered_parallel_for(
        static_cast<int>(seeds.size()), cfg.workers,
        [&](int i) { return run_mixmobo_replicate(res.benchmark, cfg, seeds[i]); },
        [&](int i, ReplicateResult& r) {
          res.mixmobo[i] = std::move(r);
          runs << render_replicate_rows(res, res.mixmobo[i]) << std::flush;
          out << "seed " << seeds[i] << ": final reward "
              << format_double(reward_trajectory(res, res.mixmobo[i]).back()) << " ("
              << format_double(res.mixmobo[i].wall_seconds) << " s)\n";
        });
    runs.close();

    write_text_file(fs::path(cfg.out_dir) / "aggregate.csv", render_aggregate_csv(res));
    write_text_file(fs::path(cfg.out_dir) / "meta.json", campaign_meta(res).dump(2) + "\n");
    write_text_file(fs::path(cfg.out_dir) / "run.log", render_run_log(res));

    std::vector<double> final_rewards;
    for (const auto& rep : res.mixmobo)
      final_rewards.push_back(reward_trajectory(res, rep).back());
    out << res.benchmark.name << ": mean final reward " << format_double(mean_of(final_rewards))
        << " +- " << format_double(sd_of(final_rewards)) << " over " << seeds.size()
        << " seeds; results in " << cfg.out_dir << "\n";
    return 0;
  });
}

namespace {

struct LoadedCampaign {
  nlohmann::json meta;
  std::vector<std::string> columns;
  // column name -> per (seed, eval) value, in file order
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<std::string>> baseline_rows;
};

std::vector<std::vector<std::string>> read_csv_rows(const fs::path& path,
                                                    std::vector<std::string>* header) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      if (header) *header = fields;
      first = false;
    } else {
      rows.push_back(std::move(fields));
    }
  }
  return rows;
}

LoadedCampaign load_campaign_dir(const std::string& raw) {
  fs::path dir(raw);
  // Accept a path to one of the campaign files; a missing path stays as given
  // so that the meta.json open below reports it instead of the parent.
  if (fs::is_regular_file(dir)) dir = dir.parent_path();
  const fs::path meta_path = dir / "meta.json";
  std::ifstream mf(meta_path);
  if (!mf) throw std::invalid_argument("cannot read " + meta_path.string());
  LoadedCampaign c;
  c.meta = nlohmann::json::parse(mf);
  if (c.meta.value("schema_version", -1) != kCsvSchemaVersion)
    throw std::invalid_argument("unsupported csv schema_version in " + meta_path.string());
  c.rows = read_csv_rows(dir / "runs.csv", &c.columns);
  if (fs::exists(dir / "baseline.csv")) c.baseline_rows = read_csv_rows(dir / "baseline.csv", nullptr);
  return c;
}

int column_index(const std::vector<std::string>& cols, const std::string& name) {
  const auto it = std::find(cols.begin(), cols.end(), name);
  require(it != cols.end(), "missing csv column: " + name);
  return static_cast<int>(it - cols.begin());
}

}  // namespace

int cmd_report(const std::vector<std::string>& paths, const std::string& plot_csv,
               std::ostream& out) {
  return guarded([&]() {
    require(!paths.empty(), "report: at least one campaign path required");
    std::vector<LoadedCampaign> campaigns;
    for (const auto& p : paths) campaigns.push_back(load_campaign_dir(p));
    const std::string benchmark = campaigns.front().meta.at("benchmark").get<std::string>();
    for (const auto& c : campaigns)
      require(c.meta.at("benchmark").get<std::string>() == benchmark,
              "report: mixed-benchmark aggregation rejected");
    const int budget = campaigns.front().meta.at("budget").get<int>();
    const bool multi = campaigns.front().meta.at("num_objectives").get<int>() > 1;

    // value maps: eval -> values across (campaign, seed)
    std::vector<std::vector<double>> rewards(budget + 1), popts(budget + 1),
        base_rewards(budget + 1);
    std::string plot = "benchmark,series,seed,eval,value\n";
    for (const auto& c : campaigns) {
      const int i_seed = column_index(c.columns, "seed");
      const int i_eval = column_index(c.columns, "eval");
      const int i_reward = column_index(c.columns, "normalized_reward");
      const int i_popt = multi ? column_index(c.columns, "p_optimum") : -1;
      for (const auto& row : c.rows) {
        const int eval = std::stoi(row[i_eval]);
        require(eval >= 1 && eval <= budget, "report: eval index out of range");
        rewards[eval].push_back(std::stod(row[i_reward]));
        plot += benchmark + ",normalized_reward," + row[i_seed] + "," + row[i_eval] + "," +
                row[i_reward] + "\n";
        if (multi) {
          popts[eval].push_back(std::stod(row[i_popt]));
          plot += benchmark + ",p_optimum," + row[i_seed] + "," + row[i_eval] + "," +
                  row[i_popt] + "\n";
        }
      }
      for (const auto& row : c.baseline_rows) {
        const int eval = std::stoi(row[i_eval]);
        base_rewards[eval].push_back(std::stod(row[i_reward]));
        plot += benchmark + ",baseline_normalized_reward," + row[i_seed] + "," + row[i_eval] +
                "," + row[i_reward] + "\n";
      }
    }

    std::vector<int> checkpoints;
    for (int c = 1; c <= 5; ++c) {
      const int eval = budget * c / 5;
      if (eval >= 1 && !rewards[eval].empty() &&
          (checkpoints.empty() || checkpoints.back() != eval))
        checkpoints.push_back(eval);
    }
    out << "benchmark: " << benchmark << "\n";
    out << "eval,reward_mean,reward_sd";
    if (multi) out << ",p_optimum_mean,p_optimum_sd";
    out << "\n";
    for (int eval : checkpoints) {
      out << eval << "," << format_double(mean_of(rewards[eval])) << ","
          << format_double(sd_of(rewards[eval]));
      if (multi)
        out << "," << format_double(mean_of(popts[eval])) << ","
            << format_double(sd_of(popts[eval]));
      out << "\n";
    }
    if (!base_rewards[budget].empty())
      out << "baseline final reward mean: " << format_double(mean_of(base_rewards[budget]))
          << "\n";
    if (!plot_csv.empty()) {
      write_text_file(plot_csv, plot);
      out << "plot data written to " << plot_csv << "\n";
    }
    return 0;
  });
}

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_state_file(const std::string& path, const OptimizerState& st) {
  const std::string tmp = path + ".tmp";
  write_text_file(tmp, state_to_json(st).dump(2) + "\n");
  fs::rename(tmp, path);
}

std::string point_line(const MixedVector& w) {
  nlohmann::json j = w;
  return j.dump();
}

}  // namespace

int cmd_session_init(const std::string& state_path, const nlohmann::json& doc,
                     std::ostream& out) {
  return guarded([&]() {
    require(!fs::exists(state_path), "session init: state file already exists: " + state_path);
    require(doc.contains("space"), "session init: document needs a \"space\" object");
    const MixedSpace space = doc.at("space").get<MixedSpace>();
    const OptimizerConfig cfg =
        config_from_json(doc.value("config", nlohmann::json::object()));
    const OptimizerState st = make_state(space, cfg);
    save_state_file(state_path, st);
    out << "initialized session state at " << state_path << " ("
        << space.dims() << " dims, " << cfg.num_objectives << " objectives, q="
        << cfg.batch_size << ")\n";
    return 0;
  });
}

int cmd_session_ask(const std::string& state_path, std::ostream& out) {
  return guarded([&]() {
    OptimizerState st = state_from_json(load_json_file(state_path));
    const std::vector<MixedVector> points = ask(st);
    save_state_file(state_path, st);
    out << "proposed " << points.size() << " point(s)"
        << (st.pending_ask->init ? " [initialization phase]" : "") << ":\n";
    for (std::size_t i = 0; i < points.size(); ++i)
      out << "  [" << i << "] " << point_line(points[i]) << "\n";
    nlohmann::json j{{"points", points}, {"init", st.pending_ask->init}};
    out << j.dump() << "\n";
    return 0;
  });
}

int cmd_session_tell(const std::string& state_path, const nlohmann::json& values,
                     std::ostream& out) {
  return guarded([&]() {
    OptimizerState st = state_from_json(load_json_file(state_path));
    if (!st.pending_ask) throw ProtocolError("tell: no outstanding ask");
    require(values.is_array(), "session tell: values must be an array of per-point arrays");
    const int m = static_cast<int>(values.size());
    const int k = st.config.num_objectives;
    Eigen::MatrixXd obs(k, m);
    for (int i = 0; i < m; ++i) {
      require(values.at(i).is_array() && static_cast<int>(values.at(i).size()) == k,
              "session tell: each entry must list one value per objective");
      for (int c = 0; c < k; ++c) obs(c, i) = values.at(i).at(c).get<double>();
    }
    tell(st, st.pending_ask->points, obs);
    save_state_file(state_path, st);
    out << "recorded " << m << " observation(s); epoch " << st.epoch << ", "
        << st.dataset.size() << " evaluations total\n";
    return 0;
  });
}

int cmd_session_status(const std::string& state_path, std::ostream& out) {
  return guarded([&]() {
    const OptimizerState st = state_from_json(load_json_file(state_path));
    out << "epoch: " << st.epoch << "\n";
    out << "evaluations: " << st.dataset.size() << "\n";
    out << "objectives: " << st.config.num_objectives << "\n";
    if (st.pending_ask)
      out << "pending ask: " << st.pending_ask->points.size() << " point(s)"
          << (st.pending_ask->init ? " [initialization phase]" : "") << "\n";
    else
      out << "pending ask: none\n";
    return 0;
  });
}

int cmd_session_result(const std::string& state_path, std::ostream& out) {
  return guarded([&]() {
    const OptimizerState st = state_from_json(load_json_file(state_path));
    require(st.dataset.size() > 0, "session result: no observations recorded yet");
    const ParetoSet pareto = extract_pareto_set(st.dataset);
    out << "pareto set (" << pareto.points.size() << " point(s)):\n";
    for (std::size_t i = 0; i < pareto.points.size(); ++i) {
      std::vector<std::string> vals;
      for (int kk = 0; kk < pareto.values.rows(); ++kk)
        vals.push_back(format_double(pareto.values(kk, static_cast<int>(i))));
      out << "  [" << i << "] f=(" << join(vals, ',') << ") " << point_line(pareto.points[i])
          << "\n";
    }
    nlohmann::json j{{"points", pareto.points}};
    auto values = nlohmann::json::array();
    for (std::size_t i = 0; i < pareto.points.size(); ++i) {
      auto row = nlohmann::json::array();
      for (int kk = 0; kk < pareto.values.rows(); ++kk)
        row.push_back(pareto.values(kk, static_cast<int>(i)));
      values.push_back(row);
    }
    j["values"] = values;
    out << j.dump() << "\n";
    return 0;
  });
}

}  // namespace mixmobo
