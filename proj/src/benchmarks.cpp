#include "mixmobo/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace mixmobo {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Substream tags, children of Rng(instance_seed).
enum InstanceStream : std::uint64_t {
  kEncryptionStream = 1,
  kNkAdjacencyStream = 2,
  kNkTablesStream = 3,
  kContamTablesStream = 4,
  kOutputScalesStream = 5,
};

constexpr int kContamStages = 21;
constexpr int kContamReps = 100;
constexpr double kContamInitial = 0.01;
constexpr double kContamLimit = 0.1;
constexpr double kContamCost = 0.2;
constexpr double kContamPenalty = 1.0;
constexpr double kContamLambda = 0.01;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  require(count >= 2, "linspace: need at least two values");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  v.back() = hi;
  return v;
}

MixedVector Encryption::apply(const MixedVector& w) const {
  require(w.categorical.size() == static_cast<int>(forward.size()),
          "encryption: categorical dimension mismatch");
  MixedVector out = w;
  for (int d = 0; d < w.categorical.size(); ++d)
    out.categorical[d] = forward[d][w.categorical[d]];
  return out;
}

MixedVector Encryption::inverse(const MixedVector& w) const {
  require(w.categorical.size() == static_cast<int>(backward.size()),
          "encryption: categorical dimension mismatch");
  MixedVector out = w;
  for (int d = 0; d < w.categorical.size(); ++d)
    out.categorical[d] = backward[d][w.categorical[d]];
  return out;
}

Encryption Encryption::identity(const MixedSpace& s) {
  Encryption enc;
  for (int c : s.categorical) {
    std::vector<int> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    enc.forward.push_back(perm);
    enc.backward.push_back(std::move(perm));
  }
  return enc;
}

Encryption make_encryption(const MixedSpace& s, std::uint64_t seed) {
  Rng rng(seed);
  Encryption enc;
  for (int c : s.categorical) {
    std::vector<int> perm(c);
    std::iota(perm.begin(), perm.end(), 0);
    for (int j = c - 1; j > 0; --j)
      std::swap(perm[j], perm[static_cast<int>(rng.uniform_int(j + 1))]);
    std::vector<int> inv(c);
    for (int latent = 0; latent < c; ++latent) inv[perm[latent]] = latent;
    enc.forward.push_back(std::move(perm));
    enc.backward.push_back(std::move(inv));
  }
  return enc;
}

double NkLandscape::evaluate(const Eigen::VectorXi& alleles) const {
  require(alleles.size() == genes, "nk: allele count mismatch");
  double sum = 0.0;
  for (int i = 0; i < genes; ++i) {
    require(alleles[i] >= 0 && alleles[i] < categories, "nk: allele out of range");
    std::size_t idx = alleles[i];
    for (int j : neighbors[i]) idx = idx * categories + alleles[j];
    sum += cost_tables[i][idx];
  }
  return sum / genes;
}

NkLandscape make_nk_landscape(int genes, int categories, double ruggedness,
                              std::uint64_t seed) {
  require(genes >= 1, "nk: genes must be >= 1");
  require(categories >= 2, "nk: categories must be >= 2");
  require(ruggedness >= 0.0 && ruggedness <= 1.0, "nk: ruggedness must be in [0, 1]");

  NkLandscape nk;
  nk.genes = genes;
  nk.categories = categories;
  nk.ruggedness = ruggedness;

  const Rng base(seed);
  Rng adj = base.child(kNkAdjacencyStream);
  nk.neighbors.resize(genes);
  for (int i = 0; i < genes; ++i)
    for (int j = 0; j < genes; ++j)
      if (j != i && adj.uniform() < ruggedness) nk.neighbors[i].push_back(j);

  Rng tab = base.child(kNkTablesStream);
  nk.cost_tables.resize(genes);
  for (int i = 0; i < genes; ++i) {
    std::size_t size = 1;
    for (std::size_t k = 0; k <= nk.neighbors[i].size(); ++k) {
      size *= categories;
      require(size <= (1u << 24), "nk: component table too large");
    }
    nk.cost_tables[i].resize(size);
    for (auto& cell : nk.cost_tables[i]) cell = tab.uniform();
  }
  return nk;
}

ContaminationInstance make_contamination_instance(std::uint64_t seed) {
  Rng rng = Rng(seed).child(kContamTablesStream);
  ContaminationInstance inst;
  inst.omega.resize(kContamReps, kContamStages);
  inst.sigma.resize(kContamReps, kContamStages);
  for (int t = 0; t < kContamReps; ++t)
    for (int i = 0; i < kContamStages; ++i) {
      inst.omega(t, i) = rng.uniform();
      inst.sigma(t, i) = rng.uniform();
    }
  return inst;
}

double f_contamination(const MixedVector& w, const ContaminationInstance& inst) {
  require(w.continuous.size() == 0 && w.ordinal.size() == 0 &&
              w.categorical.size() == kContamStages,
          "contamination: expects 21 categorical decisions");
  // Initial contamination fraction 0.01 enters the stage-1 recursion.
  Eigen::ArrayXd z = Eigen::ArrayXd::Constant(kContamReps, kContamInitial);
  double cost = 0.0;
  for (int i = 0; i < kContamStages; ++i) {
    const int wi = w.categorical[i];
    require(wi == 0 || wi == 1, "contamination: decisions must be binary");
    z = inst.omega.col(i) * (1.0 - wi) * (1.0 - z) + (1.0 - inst.sigma.col(i) * wi) * z;
    const double viol = static_cast<double>((z > kContamLimit).count()) / kContamReps;
    cost += kContamCost * wi + kContamPenalty * viol + kContamLambda * wi;
  }
  return -cost;
}

namespace {

// Piece k of the amalgamated sum; prev is the preceding slot's decoded value
// (used only by the Rosenbrock piece, k = 4).
double amalgamated_piece(int k, double v, double prev) {
  switch (k) {
    case 0:
      return std::sin(v);
    case 1:
      return -(v * v * v * v - 16.0 * v * v + 5.0 * v) / 2.0;
    case 2:
      return -(v * v);
    case 3:
      return -(10.0 + v * v - 10.0 * std::cos(2.0 * kPi * v));
    case 4: {
      const double a = v - prev * prev;
      return -(100.0 * a * a + (1.0 - v) * (1.0 - v));
    }
    case 5:
      return std::abs(std::cos(v));
    default:
      return -v;
  }
}

// Piece bounds per slot index (0-based); slots 0-1 continuous, 2-4 ordinal
// (5 levels), 5-12 categorical (5 encrypted levels).
constexpr std::array<std::pair<double, double>, 13> kAmalgamatedBounds = {{
    {0.0, kPi},           // sin
    {-5.0, 5.0},          // styblinski-tang
    {-10.0, 10.0},        // -w^2
    {-5.0, 5.0},          // rastrigin
    {-2.0, 2.0},          // rosenbrock
    {-kPi / 2, kPi / 2},  // |cos|
    {-30.0, 30.0},        // -w
    {0.0, kPi},           // sin
    {-5.0, 5.0},          // styblinski-tang
    {-10.0, 10.0},        // -w^2
    {-5.0, 5.0},          // rastrigin
    {-2.0, 2.0},          // rosenbrock
    {-kPi / 2, kPi / 2},  // |cos|
}};

std::vector<double> amalgamated_grid(int slot) {
  return linspace(kAmalgamatedBounds[slot].first, kAmalgamatedBounds[slot].second, 5);
}

MixedSpace amalgamated_space() {
  MixedSpace s;
  s.continuous = {kAmalgamatedBounds[0], kAmalgamatedBounds[1]};
  for (int slot = 2; slot < 5; ++slot) s.ordinal.push_back(amalgamated_grid(slot));
  s.categorical.assign(8, 5);
  return s;
}

}  // namespace

double f_amalgamated(const MixedVector& w, const Encryption& enc) {
  require(w.continuous.size() == 2 && w.ordinal.size() == 3 && w.categorical.size() == 8,
          "amalgamated: expects 2 continuous, 3 ordinal, 8 categorical dims");
  const MixedVector latent = enc.inverse(w);
  std::array<double, 13> v{};
  v[0] = w.continuous[0];
  v[1] = w.continuous[1];
  for (int i = 0; i < 3; ++i) v[2 + i] = amalgamated_grid(2 + i)[w.ordinal[i]];
  for (int i = 0; i < 8; ++i) v[5 + i] = amalgamated_grid(5 + i)[latent.categorical[i]];
  double f = 0.0;
  for (int slot = 0; slot < 13; ++slot)
    f += amalgamated_piece(slot % 7, v[slot], slot > 0 ? v[slot - 1] : 0.0);
  return f;
}

double f_nk(const MixedVector& w, const NkLandscape& landscape) {
  require(w.continuous.size() == 0 && w.ordinal.size() == 0, "nk: expects categorical dims only");
  return landscape.evaluate(w.categorical);
}

double f_rastrigin(const MixedVector& w, const MixedSpace& s) {
  require(w.continuous.size() == s.num_continuous() && w.ordinal.size() == s.num_ordinal() &&
              w.categorical.size() == 0,
          "rastrigin: point does not match space");
  double f = 0.0;
  for (int i = 0; i < w.continuous.size(); ++i) f += amalgamated_piece(3, w.continuous[i], 0.0);
  for (int i = 0; i < w.ordinal.size(); ++i)
    f += amalgamated_piece(3, s.ordinal[i][w.ordinal[i]], 0.0);
  return f;
}

namespace {

const std::vector<double>& styblinski_levels() {
  static const std::vector<double> levels = linspace(-5.0, 2.5, 5);
  return levels;
}

const std::vector<double>& zdt6_levels() {
  static const std::vector<double> levels = linspace(0.0, 1.0, 5);
  return levels;
}

}  // namespace

double f_styblinski_tang(const MixedVector& w, const Encryption& enc) {
  require(w.continuous.size() == 0 && w.ordinal.size() == 0 && w.categorical.size() == 10,
          "styblinski: expects 10 categorical dims");
  const MixedVector latent = enc.inverse(w);
  double f = 0.0;
  for (int i = 0; i < 10; ++i)
    f += amalgamated_piece(1, styblinski_levels()[latent.categorical[i]], 0.0);
  return f;
}

Eigen::Vector2d f_zdt6(const MixedVector& w, const Encryption& enc) {
  require(w.continuous.size() == 0 && w.ordinal.size() == 0 && w.categorical.size() == 10,
          "zdt6: expects 10 categorical dims");
  const MixedVector latent = enc.inverse(w);
  const auto& levels = zdt6_levels();
  const double w1 = levels[latent.categorical[0]];
  double tail = 0.0;
  for (int i = 1; i < 10; ++i) tail += levels[latent.categorical[i]];
  const double s6 = std::pow(std::sin(6.0 * kPi * w1), 6);
  const double f1 = std::exp(-4.0 * w1) * s6 - 1.0;
  const double g = 1.0 + 9.0 * std::pow(tail / 9.0, 0.25);
  const double f2 = -g * (1.0 - (f1 / g) * (f1 / g));
  return {f1, f2};
}

namespace {

// ---- global optima, computed per instance ----

struct ContamOptimum {
  double value;
  Eigen::VectorXi w;
};

// Branch-and-bound over the 2^21 decision vectors, carrying the per-repetition
// contamination states down the tree; stage costs are nonnegative so the
// accumulated cost is a valid pruning bound.
struct ContamSearch {
  const ContaminationInstance& inst;
  std::array<Eigen::ArrayXd, kContamStages + 1> z;
  Eigen::VectorXi cur = Eigen::VectorXi::Zero(kContamStages);
  double best_cost = std::numeric_limits<double>::infinity();
  Eigen::VectorXi best_w;

  explicit ContamSearch(const ContaminationInstance& i) : inst(i) {
    z[0] = Eigen::ArrayXd::Constant(kContamReps, kContamInitial);
    for (int s = 1; s <= kContamStages; ++s) z[s].resize(kContamReps);
  }

  void dfs(int stage, double cost) {
    if (cost >= best_cost) return;
    if (stage == kContamStages) {
      best_cost = cost;
      best_w = cur;
      return;
    }
    for (const int wi : {1, 0}) {
      z[stage + 1] = inst.omega.col(stage) * (1.0 - wi) * (1.0 - z[stage]) +
                     (1.0 - inst.sigma.col(stage) * wi) * z[stage];
      const double viol =
          static_cast<double>((z[stage + 1] > kContamLimit).count()) / kContamReps;
      cur[stage] = wi;
      dfs(stage + 1, cost + kContamCost * wi + kContamPenalty * viol + kContamLambda * wi);
    }
  }
};

ContamOptimum contamination_global(const ContaminationInstance& inst, std::uint64_t seed) {
  static std::map<std::uint64_t, ContamOptimum> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  ContamSearch search(inst);
  search.dfs(0, 0.0);
  ContamOptimum opt{-search.best_cost, search.best_w};
  cache.emplace(seed, opt);
  return opt;
}

// Maximum of piece k over an open interval: coarse scan polished by Newton on
// the stationarity condition (interior maxima only; all pieces used here have
// interior maxima within their stated bounds).
double continuous_piece_max(int k, double lo, double hi) {
  const int scan = 10000;
  double best_v = lo;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 1; i < scan; ++i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) / scan;
    const double f = amalgamated_piece(k, v, 0.0);
    if (f > best) {
      best = f;
      best_v = v;
    }
  }
  // Newton on g'(v) = 0 using analytic derivatives of the pieces.
  auto deriv = [k](double v) -> std::pair<double, double> {
    switch (k) {
      case 0:
        return {std::cos(v), -std::sin(v)};
      case 1:
        return {-(4.0 * v * v * v - 32.0 * v + 5.0) / 2.0, -(12.0 * v * v - 32.0) / 2.0};
      default:
        return {0.0, 1.0};
    }
  };
  double v = best_v;
  for (int it = 0; it < 64; ++it) {
    auto [d1, d2] = deriv(v);
    if (d2 == 0.0) break;
    const double step = d1 / d2;
    v -= step;
    if (!(v > lo && v < hi)) {
      v = best_v;
      break;
    }
    if (std::abs(step) < 1e-14) break;
  }
  return std::max(best, amalgamated_piece(k, v, 0.0));
}

double grid_piece_max(int k, const std::vector<double>& grid) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : grid) best = std::max(best, amalgamated_piece(k, v, 0.0));
  return best;
}

// Joint maximum of a Rastrigin slot followed by the Rosenbrock slot coupled to it.
double rastrigin_rosenbrock_pair_max(const std::vector<double>& rast_grid,
                                     const std::vector<double>& rosen_grid) {
  double best = -std::numeric_limits<double>::infinity();
  for (double a : rast_grid)
    for (double b : rosen_grid)
      best = std::max(best, amalgamated_piece(3, a, 0.0) + amalgamated_piece(4, b, a));
  return best;
}

double amalgamated_global() {
  double total = 0.0;
  total += continuous_piece_max(0, kAmalgamatedBounds[0].first, kAmalgamatedBounds[0].second);
  total += continuous_piece_max(1, kAmalgamatedBounds[1].first, kAmalgamatedBounds[1].second);
  total += grid_piece_max(2, amalgamated_grid(2));
  total += rastrigin_rosenbrock_pair_max(amalgamated_grid(3), amalgamated_grid(4));
  total += grid_piece_max(5, amalgamated_grid(5));
  total += grid_piece_max(6, amalgamated_grid(6));
  total += grid_piece_max(0, amalgamated_grid(7));
  total += grid_piece_max(1, amalgamated_grid(8));
  total += grid_piece_max(2, amalgamated_grid(9));
  total += rastrigin_rosenbrock_pair_max(amalgamated_grid(10), amalgamated_grid(11));
  total += grid_piece_max(5, amalgamated_grid(12));
  return total;
}

Eigen::VectorXd estimate_output_scales(const BenchmarkSpec& spec) {
  Rng rng = Rng(spec.instance_seed).child(kOutputScalesStream);
  const int samples = 1000;
  Eigen::MatrixXd values(spec.num_objectives, samples);
  for (int j = 0; j < samples; ++j) values.col(j) = spec.truth(sample_uniform(spec.space, rng));
  Eigen::VectorXd scales(spec.num_objectives);
  for (int k = 0; k < spec.num_objectives; ++k) {
    const double mean = values.row(k).mean();
    const double sd = std::sqrt((values.row(k).array() - mean).square().mean());
    scales[k] = sd > 1e-12 ? sd : 1.0;
  }
  return scales;
}

MixedVector categorical_point(const Eigen::VectorXi& cats) {
  MixedVector w;
  w.continuous.resize(0);
  w.ordinal.resize(0);
  w.categorical = cats;
  return w;
}

}  // namespace

std::vector<std::string> benchmark_names() {
  return {"contamination", "amalgamated", "nk", "rastrigin", "styblinski", "zdt6"};
}

BenchmarkSpec make_benchmark(const std::string& name, std::uint64_t instance_seed,
                             double noise_variance) {
  require(noise_variance >= 0.0, "benchmark: noise variance must be >= 0");
  BenchmarkSpec spec;
  spec.name = name;
  spec.instance_seed = instance_seed;
  spec.noise_variance = noise_variance;

  if (name == "contamination") {
    spec.space.categorical.assign(kContamStages, 2);
    auto inst = std::make_shared<ContaminationInstance>(make_contamination_instance(instance_seed));
    spec.truth = [inst](const MixedVector& w) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, f_contamination(w, *inst));
    };
    const ContamOptimum opt = contamination_global(*inst, instance_seed);
    spec.global_best = Eigen::VectorXd::Constant(1, opt.value);
    spec.global_pareto = {categorical_point(opt.w)};
  } else if (name == "amalgamated") {
    spec.space = amalgamated_space();
    auto enc = std::make_shared<Encryption>(
        make_encryption(spec.space, Rng(instance_seed).child(kEncryptionStream).key()));
    spec.truth = [enc](const MixedVector& w) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, f_amalgamated(w, *enc));
    };
    spec.global_best = Eigen::VectorXd::Constant(1, amalgamated_global());
  } else if (name == "nk") {
    spec.space.categorical.assign(8, 4);
    auto nk = std::make_shared<NkLandscape>(make_nk_landscape(8, 4, 0.2, instance_seed));
    spec.truth = [nk](const MixedVector& w) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, f_nk(w, *nk));
    };
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Eigen::VectorXi> argmax;
    Eigen::VectorXi alleles(8);
    const long total = 65536;  // 4^8
    for (long code = 0; code < total; ++code) {
      long rest = code;
      for (int g = 0; g < 8; ++g) {
        alleles[g] = static_cast<int>(rest % 4);
        rest /= 4;
      }
      const double f = nk->evaluate(alleles);
      if (f > best) {
        best = f;
        argmax.assign(1, alleles);
      } else if (f == best) {
        argmax.push_back(alleles);
      }
    }
    spec.global_best = Eigen::VectorXd::Constant(1, best);
    for (const auto& a : argmax) spec.global_pareto.push_back(categorical_point(a));
  } else if (name == "rastrigin") {
    spec.space.continuous.assign(3, {-5.0, 5.0});
    spec.space.ordinal.assign(6, linspace(-5.0, 5.0, 5));
    const MixedSpace s = spec.space;
    spec.truth = [s](const MixedVector& w) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, f_rastrigin(w, s));
    };
    // Continuous dims peak at 0 (10 cos(2 pi w) <= 10 + w^2 with equality at 0).
    double best = 3.0 * amalgamated_piece(3, 0.0, 0.0);
    for (const auto& levels : spec.space.ordinal) best += grid_piece_max(3, levels);
    spec.global_best = Eigen::VectorXd::Constant(1, best);
  } else if (name == "styblinski") {
    spec.space.categorical.assign(10, 5);
    auto enc = std::make_shared<Encryption>(
        make_encryption(spec.space, Rng(instance_seed).child(kEncryptionStream).key()));
    spec.truth = [enc](const MixedVector& w) -> Eigen::VectorXd {
      return Eigen::VectorXd::Constant(1, f_styblinski_tang(w, *enc));
    };
    int arg = 0;
    for (int i = 1; i < 5; ++i)
      if (amalgamated_piece(1, styblinski_levels()[i], 0.0) >
          amalgamated_piece(1, styblinski_levels()[arg], 0.0))
        arg = i;
    spec.global_best = Eigen::VectorXd::Constant(
        1, 10.0 * amalgamated_piece(1, styblinski_levels()[arg], 0.0));
    spec.global_pareto = {enc->apply(categorical_point(Eigen::VectorXi::Constant(10, arg)))};
  } else if (name == "zdt6") {
    spec.space.categorical.assign(10, 5);
    spec.num_objectives = 2;
    auto enc = std::make_shared<Encryption>(
        make_encryption(spec.space, Rng(instance_seed).child(kEncryptionStream).key()));
    spec.truth = [enc](const MixedVector& w) -> Eigen::VectorXd { return f_zdt6(w, *enc); };
    // Tail sums reachable by 9 dims on the quarter grid are k/4, k = 0..36.
    Eigen::Vector2d best(-std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity());
    for (int l = 0; l < 5; ++l) {
      const double w1 = zdt6_levels()[l];
      const double s6 = std::pow(std::sin(6.0 * kPi * w1), 6);
      const double f1 = std::exp(-4.0 * w1) * s6 - 1.0;
      best[0] = std::max(best[0], f1);
      for (int k = 0; k <= 36; ++k) {
        const double g = 1.0 + 9.0 * std::pow((k / 4.0) / 9.0, 0.25);
        best[1] = std::max(best[1], -g * (1.0 - (f1 / g) * (f1 / g)));
      }
    }
    spec.global_best = best;
    // Pareto-optimal parameters: any first level with zero tail (g = 1).
    for (int l = 0; l < 5; ++l) {
      Eigen::VectorXi cats = Eigen::VectorXi::Zero(10);
      cats[0] = l;
      spec.global_pareto.push_back(enc->apply(categorical_point(cats)));
    }
  } else {
    throw std::invalid_argument("unknown benchmark: " + name);
  }

  spec.space.validate();
  spec.output_scales = estimate_output_scales(spec);
  return spec;
}

Eigen::VectorXd add_observation_noise(const Eigen::VectorXd& values, double variance, Rng& rng) {
  require(variance >= 0.0, "noise: variance must be >= 0");
  Eigen::VectorXd out = values;
  const double sd = std::sqrt(variance);
  for (int i = 0; i < out.size(); ++i) out[i] += rng.normal(0.0, sd);
  return out;
}

double normalized_reward(double current_best, double random_best, double global_best) {
  if (global_best == random_best)
    throw std::invalid_argument("normalized_reward: global and random baselines coincide");
  return (current_best - random_best) / (global_best - random_best);
}

int hamming_distance(const MixedVector& a, const MixedVector& b) {
  require(a.continuous.size() == 0 && a.ordinal.size() == 0 && b.continuous.size() == 0 &&
              b.ordinal.size() == 0,
          "hamming: points must be purely categorical");
  require(a.categorical.size() == b.categorical.size(), "hamming: dimension mismatch");
  return static_cast<int>((a.categorical.array() != b.categorical.array()).count());
}

double p_optimum(const std::vector<MixedVector>& current_pareto,
                 const std::vector<MixedVector>& global_pareto) {
  require(!global_pareto.empty(), "p_optimum: global set must be nonempty");
  require(!current_pareto.empty(), "p_optimum: current set must be nonempty");
  double sum = 0.0;
  for (const auto& g : global_pareto) {
    int dmin = std::numeric_limits<int>::max();
    for (const auto& c : current_pareto) dmin = std::min(dmin, hamming_distance(g, c));
    sum += std::exp(-static_cast<double>(dmin));
  }
  return sum / static_cast<double>(global_pareto.size());
}

}  // namespace mixmobo
