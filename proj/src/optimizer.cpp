#include "mixmobo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mixmobo {

namespace {

// Substream tags under Rng(config.seed); proposals for epoch e (1-based) are a
// pure function of (seed, e), so resuming from a snapshot needs no engine state.
enum Purpose : std::uint64_t {
  kInitPoints = 1,
  kHyperSearch = 2,
  kGaRun = 3,
  kDedupNominees = 4,
  kHedgeSelect = 5,
  kDedupSelected = 6,
  kFallback = 7,
};

Eigen::VectorXd evaluate_black_box(const BlackBox& f, const MixedVector& w, int num_objectives,
                                   const char* where) {
  Eigen::VectorXd v;
  try {
    v = f(w);
  } catch (const std::exception& err) {
    nlohmann::json jw = w;
    throw std::runtime_error(std::string(where) + ": evaluation failed at " + jw.dump() + ": " +
                             err.what());
  }
  if (num_objectives > 0 && v.size() != num_objectives)
    throw std::invalid_argument(std::string(where) + ": black box returned " +
                                std::to_string(v.size()) + " objectives, expected " +
                                std::to_string(num_objectives));
  return v;
}

// Uniform random Q-batch used when the surrogate cannot be fitted. All L
// nominee slots carry the same batch so hedge gains stay unbiased.
ProposeResult fallback_propose(const OptimizerState& st, const std::string& reason) {
  const OptimizerConfig& cfg = st.config;
  const int l_count = static_cast<int>(cfg.portfolio.size());
  const Rng root(cfg.seed);
  const std::uint64_t e = static_cast<std::uint64_t>(st.epoch) + 1;

  ProposeResult res;
  res.gp_fallback = true;
  res.warnings.push_back("gp fit failed, uniform random fallback: " + reason);

  Rng frng = root.child(kFallback, e);
  std::vector<MixedVector> batch;
  batch.reserve(cfg.batch_size);
  for (int q = 0; q < cfg.batch_size; ++q) batch.push_back(sample_uniform(st.space, frng));
  Rng drng = root.child(kDedupNominees, e);
  batch = dedup_mutate(batch, st.dataset, st.space, cfg.mutation_rate, cfg.dedup_tolerance, drng,
                       cfg.dedup_against_dataset, cfg.dedup_max_retries, &res.warnings);

  res.nominees.assign(l_count, batch);
  res.hedge.eta = cfg.eta;
  res.hedge.gains = Eigen::MatrixXd::Zero(l_count, cfg.num_objectives);
  res.hedge.probabilities = Eigen::VectorXd::Constant(l_count, 1.0 / l_count);
  res.selected = batch;
  res.chosen_acquisitions.assign(cfg.batch_size, 0);
  return res;
}

ProposeResult propose_with_fallback(const OptimizerState& st) {
  try {
    return propose_batch(st);
  } catch (const GpFitError& err) {
    return fallback_propose(st, err.what());
  }
}

EpochLog make_log(int epoch, const ProposeResult& res, const Eigen::MatrixXd& observed) {
  EpochLog log;
  log.epoch = epoch;
  log.hedge_probabilities = res.hedge.probabilities;
  log.chosen_acquisitions = res.chosen_acquisitions;
  log.selected = res.selected;
  log.observed = observed;
  log.warnings = res.warnings;
  log.gp_fallback = res.gp_fallback;
  return log;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  return m;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (n_init < 1) throw std::invalid_argument("config: n_init must be >= 1");
  if (epochs < 0) throw std::invalid_argument("config: epochs must be >= 0");
  if (batch_size < 1) throw std::invalid_argument("config: batch_size must be >= 1");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw std::invalid_argument("config: mutation_rate must be in [0,1]");
  if (dedup_tolerance < 0.0) throw std::invalid_argument("config: dedup_tolerance must be >= 0");
  if (dedup_max_retries < 0) throw std::invalid_argument("config: dedup_max_retries must be >= 0");
  if (portfolio.empty()) throw std::invalid_argument("config: portfolio must be nonempty");
  if (std::find(portfolio.begin(), portfolio.end(), AcquisitionKind::UCB) == portfolio.end())
    throw std::invalid_argument("config: portfolio must contain ucb");
  if (!(eta > 0.0)) throw std::invalid_argument("config: eta must be > 0");
  if (!(ucb_kappa > 0.0)) throw std::invalid_argument("config: ucb_kappa must be > 0");
  if (pi_ei_xi < 0.0) throw std::invalid_argument("config: xi must be >= 0");
  if (num_objectives < 1) throw std::invalid_argument("config: num_objectives must be >= 1");
  if (batch_size > ga.population_size)
    throw std::invalid_argument("config: batch_size must be <= ga population_size");
  ga.validate();
}

OptimizerState make_state(const MixedSpace& s, const OptimizerConfig& cfg) {
  s.validate();
  cfg.validate();
  OptimizerState st;
  st.space = s;
  st.config = cfg;
  return st;
}

Dataset initialize_dataset(const BlackBox& f, const MixedSpace& s, int n_init, Rng& rng) {
  if (n_init < 1) throw std::invalid_argument("initialize_dataset: n_init must be >= 1");
  Dataset d;
  for (int i = 0; i < n_init; ++i) {
    const MixedVector w = sample_uniform(s, rng);
    d.append(w, evaluate_black_box(f, w, d.num_objectives(), "initialize_dataset"));
  }
  return d;
}

ProposeResult propose_batch(const OptimizerState& st) {
  const OptimizerConfig& cfg = st.config;
  cfg.validate();
  if (st.dataset.size() < 1)
    throw std::invalid_argument("propose_batch: dataset is empty; initialize first");

  const Rng root(cfg.seed);
  const std::uint64_t e = static_cast<std::uint64_t>(st.epoch) + 1;
  const int l_count = static_cast<int>(cfg.portfolio.size());

  KernelHyperparams hp;
  if (st.dataset.size() >= 2) {
    Rng hrng = root.child(kHyperSearch, e);
    hp = fit_hyperparams(st.dataset, st.space, cfg.hyper, hrng);
  } else {
    hp = midrange_hyperparams(st.space, cfg.hyper);
  }
  const GpModel model = fit_gp(st.dataset, st.space, hp);

  AcquisitionParams params;
  params.ucb_kappa = cfg.ucb_kappa;
  params.pi_ei_xi = cfg.pi_ei_xi;
  params.incumbents = best_observed(st.dataset);

  ProposeResult res;
  res.nominees.resize(l_count);
  for (int l = 0; l < l_count; ++l) {
    const auto raw = optimize_acquisition(model, cfg.portfolio[l], params, st.space,
                                          cfg.batch_size, cfg.ga,
                                          root.child(kGaRun, e, static_cast<std::uint64_t>(l)));
    Rng drng = root.child(kDedupNominees, e, static_cast<std::uint64_t>(l));
    res.nominees[l] =
        dedup_mutate(raw, st.dataset, st.space, cfg.mutation_rate, cfg.dedup_tolerance, drng,
                     cfg.dedup_against_dataset, cfg.dedup_max_retries, &res.warnings);
  }

  res.hedge = compute_hedge_state(model, st.history, cfg.eta, l_count);
  Rng srng = root.child(kHedgeSelect, e);
  auto sel = select_batch_traced(res.nominees, res.hedge.probabilities, cfg.batch_size, srng);
  Rng drng = root.child(kDedupSelected, e);
  res.selected = dedup_mutate(sel.points, st.dataset, st.space, cfg.mutation_rate,
                              cfg.dedup_tolerance, drng, cfg.dedup_against_dataset,
                              cfg.dedup_max_retries, &res.warnings);
  res.chosen_acquisitions = std::move(sel.chosen);
  return res;
}

std::vector<MixedVector> dedup_mutate(const std::vector<MixedVector>& batch, const Dataset& d,
                                      const MixedSpace& s, double beta, double tol, Rng& rng,
                                      bool against_dataset, int max_retries,
                                      std::vector<std::string>* warnings) {
  std::vector<MixedVector> out;
  out.reserve(batch.size());
  const auto conflicts = [&](const MixedVector& w) {
    for (const auto& prev : out)
      if (l2_distance(w, prev, s) < tol) return true;
    if (against_dataset)
      for (const auto& p : d.points)
        if (l2_distance(w, p, s) < tol) return true;
    return false;
  };
  for (std::size_t i = 0; i < batch.size(); ++i) {
    MixedVector w = batch[i];
    int tries = 0;
    while (conflicts(w) && tries < max_retries) {
      w = mutate_point(w, s, beta, rng);
      ++tries;
    }
    if (warnings && tries == max_retries && conflicts(w))
      warnings->push_back("dedup retries exhausted for batch slot " + std::to_string(i) +
                          "; accepting duplicate");
    out.push_back(w);
  }
  return out;
}

void run_epoch(OptimizerState& st, const BlackBox& f) {
  const OptimizerConfig& cfg = st.config;
  if (st.pending_ask) throw ProtocolError("run_epoch: outstanding ask must be answered first");
  const ProposeResult res = propose_with_fallback(st);

  Eigen::MatrixXd observed(cfg.num_objectives, cfg.batch_size);
  for (int q = 0; q < cfg.batch_size; ++q)
    observed.col(q) = evaluate_black_box(f, res.selected[q], cfg.num_objectives, "run_epoch");

  for (int q = 0; q < cfg.batch_size; ++q) st.dataset.append(res.selected[q], observed.col(q));
  st.history.append_epoch(res.nominees);
  st.epoch += 1;
  st.logs.push_back(make_log(st.epoch, res, observed));
}

OptimizerState run_optimization(const MixedSpace& s, const OptimizerConfig& cfg,
                                const BlackBox& f) {
  OptimizerState st = make_state(s, cfg);
  Rng irng = Rng(cfg.seed).child(kInitPoints);
  st.dataset = initialize_dataset(f, s, cfg.n_init, irng);
  if (st.dataset.num_objectives() != cfg.num_objectives)
    throw std::invalid_argument("run_optimization: black box objective count differs from config");
  for (int e = 0; e < cfg.epochs; ++e) run_epoch(st, f);
  return st;
}

ParetoSet extract_pareto_set(const Dataset& d) {
  if (d.size() == 0) throw std::invalid_argument("extract_pareto_set: empty dataset");
  ParetoSet p;
  std::vector<int> keep;
  for (int i = 0; i < d.size(); ++i) {
    bool dominated = false;
    for (int j = 0; j < d.size() && !dominated; ++j)
      if (j != i && dominates(d.objectives.col(j), d.objectives.col(i))) dominated = true;
    if (!dominated) keep.push_back(i);
  }
  p.values.resize(d.num_objectives(), static_cast<int>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    p.points.push_back(d.points[keep[c]]);
    p.values.col(static_cast<int>(c)) = d.objectives.col(keep[c]);
  }
  return p;
}

std::vector<MixedVector> ask(OptimizerState& st) {
  if (st.pending_ask) throw ProtocolError("ask: outstanding ask has not been answered");
  const OptimizerConfig& cfg = st.config;

  OptimizerState::PendingAsk pending;
  if (st.dataset.size() < cfg.n_init) {
    // Initialization phase: replay the same sequential stream that
    // run_optimization draws from, Q points per ask. The stream position is
    // the dataset size, so resumed snapshots continue where they left off.
    pending.init = true;
    const int drawn = st.dataset.size();
    const int count = std::min(cfg.batch_size, cfg.n_init - drawn);
    Rng irng = Rng(cfg.seed).child(kInitPoints);
    for (int i = 0; i < drawn + count; ++i) {
      const MixedVector w = sample_uniform(st.space, irng);
      if (i >= drawn) pending.points.push_back(w);
    }
  } else {
    const ProposeResult res = propose_with_fallback(st);
    pending.points = res.selected;
    pending.nominees = res.nominees;
    pending.hedge_probabilities = res.hedge.probabilities;
    pending.chosen_acquisitions = res.chosen_acquisitions;
    pending.warnings = res.warnings;
    pending.gp_fallback = res.gp_fallback;
  }
  st.pending_ask = std::move(pending);
  return st.pending_ask->points;
}

void tell(OptimizerState& st, const std::vector<MixedVector>& points,
          const Eigen::MatrixXd& values) {
  if (!st.pending_ask) throw ProtocolError("tell: no outstanding ask");
  const auto& pending = *st.pending_ask;
  if (points.size() != pending.points.size())
    throw ProtocolError("tell: point count differs from the outstanding ask");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!(points[i] == pending.points[i]))
      throw ProtocolError("tell: point " + std::to_string(i) + " differs from the asked point");
  if (values.rows() != st.config.num_objectives)
    throw std::invalid_argument("tell: objective dimension mismatch");
  if (values.cols() != static_cast<Eigen::Index>(points.size()))
    throw std::invalid_argument("tell: one objective vector per point required");

  for (std::size_t i = 0; i < points.size(); ++i)
    st.dataset.append(points[i], values.col(static_cast<int>(i)));
  if (!pending.init) {
    st.history.append_epoch(pending.nominees);
    st.epoch += 1;
    EpochLog log;
    log.epoch = st.epoch;
    log.hedge_probabilities = pending.hedge_probabilities;
    log.chosen_acquisitions = pending.chosen_acquisitions;
    log.selected = pending.points;
    log.observed = values;
    log.warnings = pending.warnings;
    log.gp_fallback = pending.gp_fallback;
    st.logs.push_back(std::move(log));
  }
  st.pending_ask.reset();
}

nlohmann::json config_to_json(const OptimizerConfig& cfg) {
  auto names = nlohmann::json::array();
  for (auto kind : cfg.portfolio) names.push_back(acquisition_name(kind));
  return nlohmann::json{
      {"n_init", cfg.n_init},
      {"epochs", cfg.epochs},
      {"batch_size", cfg.batch_size},
      {"mutation_rate", cfg.mutation_rate},
      {"dedup_tolerance", cfg.dedup_tolerance},
      {"dedup_against_dataset", cfg.dedup_against_dataset},
      {"dedup_max_retries", cfg.dedup_max_retries},
      {"acquisitions", names},
      {"ga",
       {{"population_size", cfg.ga.population_size},
        {"generations", cfg.ga.generations},
        {"crossover_rate", cfg.ga.crossover_rate},
        {"mutation_rate", cfg.ga.mutation_rate},
        {"tournament_size", cfg.ga.tournament_size},
        {"seed", cfg.ga.seed}}},
      {"ucb_kappa", cfg.ucb_kappa},
      {"xi", cfg.pi_ei_xi},
      {"eta", cfg.eta},
      {"seed", cfg.seed},
      {"num_objectives", cfg.num_objectives},
      {"hyper",
       {{"budget", cfg.hyper.budget},
        {"lengthscale_bounds", cfg.hyper.lengthscale_bounds},
        {"amplitude_bounds", cfg.hyper.amplitude_bounds},
        {"noise_bounds", cfg.hyper.noise_bounds}}}};
}

OptimizerConfig config_from_json(const nlohmann::json& j) {
  OptimizerConfig cfg;
  cfg.n_init = j.value("n_init", cfg.n_init);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.mutation_rate = j.value("mutation_rate", cfg.mutation_rate);
  cfg.dedup_tolerance = j.value("dedup_tolerance", cfg.dedup_tolerance);
  cfg.dedup_against_dataset = j.value("dedup_against_dataset", cfg.dedup_against_dataset);
  cfg.dedup_max_retries = j.value("dedup_max_retries", cfg.dedup_max_retries);
  if (j.contains("acquisitions")) {
    cfg.portfolio.clear();
    for (const auto& name : j.at("acquisitions"))
      cfg.portfolio.push_back(parse_acquisition(name.get<std::string>()));
  }
  if (j.contains("ga")) {
    const auto& g = j.at("ga");
    cfg.ga.population_size = g.value("population_size", cfg.ga.population_size);
    cfg.ga.generations = g.value("generations", cfg.ga.generations);
    cfg.ga.crossover_rate = g.value("crossover_rate", cfg.ga.crossover_rate);
    cfg.ga.mutation_rate = g.value("mutation_rate", cfg.ga.mutation_rate);
    cfg.ga.tournament_size = g.value("tournament_size", cfg.ga.tournament_size);
    cfg.ga.seed = g.value("seed", cfg.ga.seed);
  }
  cfg.ucb_kappa = j.value("ucb_kappa", cfg.ucb_kappa);
  cfg.pi_ei_xi = j.value("xi", cfg.pi_ei_xi);
  cfg.eta = j.value("eta", cfg.eta);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.num_objectives = j.value("num_objectives", cfg.num_objectives);
  if (j.contains("hyper")) {
    const auto& h = j.at("hyper");
    cfg.hyper.budget = h.value("budget", cfg.hyper.budget);
    cfg.hyper.lengthscale_bounds = h.value("lengthscale_bounds", cfg.hyper.lengthscale_bounds);
    cfg.hyper.amplitude_bounds = h.value("amplitude_bounds", cfg.hyper.amplitude_bounds);
    cfg.hyper.noise_bounds = h.value("noise_bounds", cfg.hyper.noise_bounds);
  }
  cfg.validate();
  return cfg;
}

nlohmann::json state_to_json(const OptimizerState& st) {
  nlohmann::json dataset{{"points", st.dataset.points},
                         {"objectives", matrix_to_json(st.dataset.objectives)}};
  nlohmann::json history = nlohmann::json::array();
  for (const auto& epoch : st.history.epochs) history.push_back(epoch);

  nlohmann::json pending = nullptr;
  if (st.pending_ask) {
    const auto& p = *st.pending_ask;
    pending = nlohmann::json{{"init", p.init},
                             {"points", p.points},
                             {"nominees", p.nominees},
                             {"probabilities", std::vector<double>(p.hedge_probabilities.begin(),
                                                                   p.hedge_probabilities.end())},
                             {"chosen", p.chosen_acquisitions},
                             {"warnings", p.warnings},
                             {"gp_fallback", p.gp_fallback}};
  }

  return nlohmann::json{{"schema_version", 1},
                        {"space", st.space},
                        {"config", config_to_json(st.config)},
                        {"dataset", dataset},
                        {"history", history},
                        {"epoch", st.epoch},
                        {"rng_state", st.config.seed},
                        {"pending_ask", pending}};
}

OptimizerState state_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != 1)
    throw std::invalid_argument("state: unsupported schema_version");
  OptimizerState st = make_state(j.at("space").get<MixedSpace>(),
                                 config_from_json(j.at("config")));
  const auto& d = j.at("dataset");
  st.dataset.points = d.at("points").get<std::vector<MixedVector>>();
  st.dataset.objectives = matrix_from_json(d.at("objectives"));
  if (static_cast<int>(st.dataset.points.size()) != st.dataset.objectives.cols())
    throw std::invalid_argument("state: dataset points/objectives size mismatch");
  for (const auto& epoch : j.at("history"))
    st.history.append_epoch(epoch.get<NomineeBatch>());
  st.epoch = j.at("epoch").get<int>();
  if (!j.at("pending_ask").is_null()) {
    const auto& p = j.at("pending_ask");
    OptimizerState::PendingAsk pending;
    pending.init = p.at("init").get<bool>();
    pending.points = p.at("points").get<std::vector<MixedVector>>();
    pending.nominees = p.at("nominees").get<NomineeBatch>();
    const auto probs = p.at("probabilities").get<std::vector<double>>();
    pending.hedge_probabilities.resize(static_cast<Eigen::Index>(probs.size()));
    for (std::size_t i = 0; i < probs.size(); ++i)
      pending.hedge_probabilities[static_cast<Eigen::Index>(i)] = probs[i];
    pending.chosen_acquisitions = p.at("chosen").get<std::vector<int>>();
    pending.warnings = p.at("warnings").get<std::vector<std::string>>();
    pending.gp_fallback = p.at("gp_fallback").get<bool>();
    st.pending_ask = std::move(pending);
  }
  return st;
}

}  // namespace mixmobo
