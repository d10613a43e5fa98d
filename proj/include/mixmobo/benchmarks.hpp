#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

/// Seeded per-dimension permutations of categorical indices. The optimizer
/// only ever sees permuted ("encrypted") indices; the latent index order is
/// used when evaluating the underlying analytic function.
struct Encryption {
  std::vector<std::vector<int>> forward;   ///< per categorical dim: latent -> visible
  std::vector<std::vector<int>> backward;  ///< per categorical dim: visible -> latent

  /// Maps latent categorical indices to visible ones; other dims untouched.
  MixedVector apply(const MixedVector& w) const;
  /// Inverse of apply.
  MixedVector inverse(const MixedVector& w) const;

  static Encryption identity(const MixedSpace& s);
};

Encryption make_encryption(const MixedSpace& s, std::uint64_t seed);

/// Random epistatic landscape over `genes` categorical dims. Each gene links
/// to every other gene independently with probability `ruggedness`; component
/// costs are seeded U(0,1) draws per (own allele, neighbor alleles) tuple and
/// fitness is the mean component cost.
struct NkLandscape {
  int genes = 0;
  int categories = 0;
  double ruggedness = 0.0;
  std::vector<std::vector<int>> neighbors;       ///< per gene, ascending, self excluded
  std::vector<std::vector<double>> cost_tables;  ///< per gene, categories^(1+|neighbors|)

  double evaluate(const Eigen::VectorXi& alleles) const;
};

NkLandscape make_nk_landscape(int genes, int categories, double ruggedness, std::uint64_t seed);

/// Frozen Monte-Carlo tables for the contamination chain: spread and
/// decontamination rates per repetition and stage, drawn once per instance.
struct ContaminationInstance {
  Eigen::ArrayXXd omega;  ///< T x D spread rates
  Eigen::ArrayXXd sigma;  ///< T x D decontamination rates
};

ContaminationInstance make_contamination_instance(std::uint64_t seed);

/// 21 binary prevention decisions; reward = -(prevention cost + violation
/// penalty) - l1 regularization, averaged over the frozen repetitions.
double f_contamination(const MixedVector& w, const ContaminationInstance& inst);

/// 13-dim piecewise sum (2 continuous, 3 ordinal, 8 categorical slots); the
/// piece for slot i is selected by mod(i-1, 7). Categorical slots decode
/// through the encryption to 5 equally spaced levels within each piece's bounds.
double f_amalgamated(const MixedVector& w, const Encryption& enc);

double f_nk(const MixedVector& w, const NkLandscape& landscape);

/// 9-dim Rastrigin sum (3 continuous, 6 ordinal); ordinal levels come from s.
double f_rastrigin(const MixedVector& w, const MixedSpace& s);

/// 10 categorical dims decoding to 5 equally spaced levels in [-5, 2.5].
double f_styblinski_tang(const MixedVector& w, const Encryption& enc);

/// 10 categorical dims decoding to 5 equally spaced levels in [0, 1];
/// returns (f1, f2), both under the maximization convention.
Eigen::Vector2d f_zdt6(const MixedVector& w, const Encryption& enc);

/// A registered benchmark instance. `truth` is the noiseless oracle over the
/// optimizer-visible space; global optima are computed at construction
/// (enumeration / branch-and-bound / calculus), never hardcoded.
struct BenchmarkSpec {
  std::string name;
  MixedSpace space;  ///< optimizer-visible space
  int num_objectives = 1;
  double noise_variance = 0.0;
  std::uint64_t instance_seed = 0;
  BlackBox truth;
  Eigen::VectorXd global_best;             ///< per-objective global maximum value
  std::vector<MixedVector> global_pareto;  ///< optimal parameter set, visible coords
                                           ///< (all-categorical benchmarks only)
  Eigen::VectorXd output_scales;           ///< per-objective std over seeded uniform sample
};

std::vector<std::string> benchmark_names();

/// name in {contamination, amalgamated, nk, rastrigin, styblinski, zdt6}.
/// Throws std::invalid_argument for unknown names.
BenchmarkSpec make_benchmark(const std::string& name, std::uint64_t instance_seed,
                             double noise_variance);

/// Adds independent zero-mean Gaussian noise of the given variance to each
/// objective. Callers wanting scale-aware noise standardize first.
Eigen::VectorXd add_observation_noise(const Eigen::VectorXd& values, double variance, Rng& rng);

/// (current - random) / (global - random). Throws std::invalid_argument when
/// global_best == random_best.
double normalized_reward(double current_best, double random_best, double global_best);

/// Number of differing categorical coordinates. Both points must be purely
/// categorical and of equal length.
int hamming_distance(const MixedVector& a, const MixedVector& b);

/// (1/N) sum over global points of exp(-min Hamming distance to the current
/// set). Requires nonempty, all-categorical point sets.
double p_optimum(const std::vector<MixedVector>& current_pareto,
                 const std::vector<MixedVector>& global_pareto);

/// count >= 2 equally spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace mixmobo
