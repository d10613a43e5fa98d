#include "mixmobo/moga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mixmobo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Stream purposes under the per-run base stream; individuals derive from
// (generation, index, purpose) so results do not depend on evaluation order.
enum StreamPurpose : std::uint64_t { kInit = 0, kVariation = 1, kFitness = 2 };

struct Individual {
  MixedVector point;
  Eigen::VectorXd values;
  bool evaluated = false;
  int front_rank = 0;
  double crowding = 0.0;
};

// Rank ordering used by tournaments and survivor selection: lower front first,
// larger crowding first.
bool ranked_before(const Individual& a, const Individual& b) {
  if (a.front_rank != b.front_rank) return a.front_rank < b.front_rank;
  return a.crowding > b.crowding;
}

void assign_ranks(std::vector<Individual>& pop) {
  std::vector<Eigen::VectorXd> values(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) values[i] = pop[i].values;
  const auto fronts = non_dominated_sort(values);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    std::vector<Eigen::VectorXd> fv(fronts[f].size());
    for (std::size_t i = 0; i < fronts[f].size(); ++i) fv[i] = values[fronts[f][i]];
    const auto cd = crowding_distance(fv);
    for (std::size_t i = 0; i < fronts[f].size(); ++i) {
      pop[fronts[f][i]].front_rank = static_cast<int>(f) + 1;
      pop[fronts[f][i]].crowding = cd[i];
    }
  }
}

const Individual& tournament(const std::vector<Individual>& pop, int tournament_size, Rng& rng) {
  const Individual* best = &pop[rng.uniform_int(pop.size())];
  for (int t = 1; t < tournament_size; ++t) {
    const Individual& challenger = pop[rng.uniform_int(pop.size())];
    if (ranked_before(challenger, *best)) best = &challenger;
  }
  return *best;
}

// Uniform per-dimension crossover; continuous genes take the interpolating
// blend branch with probability 0.5, which stays inside the box by construction.
MixedVector crossover(const MixedVector& a, const MixedVector& b, const MixedSpace& s, Rng& rng) {
  MixedVector child = a;
  for (int i = 0; i < s.num_continuous(); ++i) {
    if (rng.uniform() < 0.5) {
      child.continuous[i] = a.continuous[i] + rng.uniform() * (b.continuous[i] - a.continuous[i]);
    } else if (rng.uniform() < 0.5) {
      child.continuous[i] = b.continuous[i];
    }
  }
  for (int i = 0; i < s.num_ordinal(); ++i)
    if (rng.uniform() < 0.5) child.ordinal[i] = b.ordinal[i];
  for (int i = 0; i < s.num_categorical(); ++i)
    if (rng.uniform() < 0.5) child.categorical[i] = b.categorical[i];
  return child;
}

// Evaluates every individual without a cached value; for SMC everything is
// re-scored with fresh per-individual draws. One batched GP predict per call.
void evaluate(std::vector<Individual>& pop, const GpModel& m, AcquisitionKind kind,
              const AcquisitionParams& p, const Rng& base, std::uint64_t generation) {
  const bool stochastic = kind == AcquisitionKind::SMC;
  std::vector<int> todo;
  for (std::size_t i = 0; i < pop.size(); ++i)
    if (stochastic || !pop[i].evaluated) todo.push_back(static_cast<int>(i));
  if (todo.empty()) return;

  std::vector<MixedVector> pts(todo.size());
  for (std::size_t j = 0; j < todo.size(); ++j) pts[j] = pop[todo[j]].point;
  auto [means, vars] = gp_predict_batch(m, pts);
  const Eigen::MatrixXd mu = standardize_posterior_means(m, means);
  const AcquisitionParams ps = standardize_incumbents(m, p);

  for (std::size_t j = 0; j < todo.size(); ++j) {
    double unit = 0.0;
    if (stochastic) {
      Rng r = base.child(generation, static_cast<std::uint64_t>(todo[j]), kFitness);
      unit = r.uniform();
    }
    pop[todo[j]].values = score_posterior(kind, mu.col(static_cast<int>(j)),
                                          std::sqrt(vars[static_cast<int>(j)]), ps, unit);
    pop[todo[j]].evaluated = true;
  }
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0)
    throw std::invalid_argument("ga: population_size must be >= 2 and even");
  if (generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
  if (crossover_rate < 0.0 || crossover_rate > 1.0)
    throw std::invalid_argument("ga: crossover_rate must be in [0,1]");
  if (mutation_rate < 0.0 || mutation_rate > 1.0)
    throw std::invalid_argument("ga: mutation_rate must be in [0,1]");
  if (tournament_size < 2) throw std::invalid_argument("ga: tournament_size must be >= 2");
}

bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dominates: length mismatch");
  return (a.array() >= b.array()).all() && (a.array() > b.array()).any();
}

std::vector<std::vector<int>> non_dominated_sort(const std::vector<Eigen::VectorXd>& values) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw std::invalid_argument("non_dominated_sort: empty input");
  std::vector<int> dom_count(n, 0);
  std::vector<std::vector<int>> dominated(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (dominates(values[i], values[j])) {
        dominated[i].push_back(j);
        ++dom_count[j];
      } else if (dominates(values[j], values[i])) {
        dominated[j].push_back(i);
        ++dom_count[i];
      }
    }

  std::vector<std::vector<int>> fronts;
  std::vector<int> current;
  for (int i = 0; i < n; ++i)
    if (dom_count[i] == 0) current.push_back(i);
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<int> next;
    for (int i : current)
      for (int j : dominated[i])
        if (--dom_count[j] == 0) next.push_back(j);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& front_values) {
  const int n = static_cast<int>(front_values.size());
  if (n == 0) throw std::invalid_argument("crowding_distance: empty front");
  if (n <= 2) return std::vector<double>(n, kInf);
  const int k = static_cast<int>(front_values[0].size());

  std::vector<double> dist(n, 0.0);
  std::vector<int> order(n);
  for (int obj = 0; obj < k; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return front_values[a][obj] < front_values[b][obj]; });
    dist[order.front()] = kInf;
    dist[order.back()] = kInf;
    const double range = front_values[order.back()][obj] - front_values[order.front()][obj];
    if (range <= 0.0) continue;
    for (int i = 1; i < n - 1; ++i)
      if (dist[order[i]] != kInf)
        dist[order[i]] += (front_values[order[i + 1]][obj] - front_values[order[i - 1]][obj]) / range;
  }
  return dist;
}

std::vector<MixedVector> optimize_acquisition(const GpModel& m, AcquisitionKind kind,
                                              const AcquisitionParams& p, const MixedSpace& s,
                                              int q, const GaConfig& cfg, const Rng& rng) {
  cfg.validate();
  p.validate(m.num_objectives(), kind);
  if (q < 1 || q > cfg.population_size)
    throw std::invalid_argument("ga: q must be in [1, population_size]");

  const double mrate = cfg.mutation_rate > 0.0 ? cfg.mutation_rate : 1.0 / s.dims();
  const Rng& base = rng;

  std::vector<Individual> pop(cfg.population_size);
  for (int i = 0; i < cfg.population_size; ++i) {
    Rng r = base.child(0, static_cast<std::uint64_t>(i), kInit);
    pop[i].point = sample_uniform(s, r);
  }
  evaluate(pop, m, kind, p, base, 0);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    assign_ranks(pop);

    std::vector<Individual> children(cfg.population_size);
    for (int c = 0; c < cfg.population_size; ++c) {
      Rng r = base.child(static_cast<std::uint64_t>(gen), static_cast<std::uint64_t>(c), kVariation);
      const Individual& pa = tournament(pop, cfg.tournament_size, r);
      const Individual& pb = tournament(pop, cfg.tournament_size, r);
      MixedVector child =
          r.uniform() < cfg.crossover_rate ? crossover(pa.point, pb.point, s, r) : pa.point;
      children[c].point = mutate_point(child, s, mrate, r);
    }

    std::vector<Individual> combined;
    combined.reserve(pop.size() + children.size());
    for (auto& ind : pop) combined.push_back(std::move(ind));
    for (auto& ind : children) combined.push_back(std::move(ind));
    evaluate(combined, m, kind, p, base, static_cast<std::uint64_t>(gen));
    assign_ranks(combined);

    std::vector<int> order(combined.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ranked_before(combined[a], combined[b]); });
    std::vector<Individual> survivors;
    survivors.reserve(cfg.population_size);
    for (int i = 0; i < cfg.population_size; ++i) survivors.push_back(std::move(combined[order[i]]));
    pop = std::move(survivors);
  }

  assign_ranks(pop);
  std::vector<int> order(pop.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ranked_before(pop[a], pop[b]); });
  std::vector<MixedVector> batch;
  batch.reserve(q);
  for (int i = 0; i < q; ++i) batch.push_back(pop[order[i]].point);
  return batch;
}

std::vector<MixedVector> optimize_acquisition(const GpModel& m, AcquisitionKind kind,
                                              const AcquisitionParams& p, const MixedSpace& s,
                                              int q, const GaConfig& cfg) {
  Rng r(cfg.seed);
  return optimize_acquisition(m, kind, p, s, q, cfg, r);
}

}  // namespace mixmobo
