#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

/// Hyperparameters of the mixed squared-exponential kernel
///   ker(w, w') = eps_f^2 exp(-1/2 d^T M d),  M = diag(h)^-2,
/// where d is the concatenated mixed distance vector and h the per-dimension
/// lengthscales.
struct KernelHyperparams {
  Eigen::VectorXd lengthscales;   ///< one per dimension, > 0
  double signal_amplitude = 1.0;  ///< eps_f > 0
  double noise_variance = 0.0;    ///< sigma_n^2 >= 0

  void validate(int dims) const;
};

/// Observed evaluations: points w_i with their K objective values.
/// Objectives are stored as a K x n matrix (one column per point).
struct Dataset {
  std::vector<MixedVector> points;
  Eigen::MatrixXd objectives;

  int size() const { return static_cast<int>(points.size()); }
  int num_objectives() const { return static_cast<int>(objectives.rows()); }
  void append(const MixedVector& w, const Eigen::VectorXd& values);
};

/// Per-objective best observed value (maximization incumbents).
Eigen::VectorXd best_observed(const Dataset& d);

double kernel_eval(const MixedVector& w, const MixedVector& w2, const MixedSpace& s,
                   const KernelHyperparams& hp);

struct GpFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fitted multi-objective GP surrogate. One kernel and one covariance factor
/// are shared by all K objectives; each objective only contributes its own
/// prediction weight vector. Objective values are standardized per objective
/// before fitting and predictions are mapped back to the raw scale.
struct GpModel {
  MixedSpace space;
  KernelHyperparams hyperparams;
  std::vector<MixedVector> train_points;
  Eigen::MatrixXd chol_lower;       ///< L with L L^T = Gram + (sigma_n^2 + jitter) I
  Eigen::MatrixXd weights;          ///< n x K, column k solves for objective k
  Eigen::VectorXd objective_means;  ///< standardization centers, length K
  Eigen::VectorXd objective_stds;   ///< standardization scales, length K
  double jitter = 0.0;              ///< diagonal jitter actually applied
  Eigen::MatrixXd inv_chol_lower;   ///< L^-1, kept so batch predictions run as GEMM
  Eigen::MatrixXd train_features;   ///< F x n lengthscale-scaled encoding (batch kernels)
  Eigen::VectorXd train_sqnorms;    ///< column squared norms of train_features

  int num_objectives() const { return static_cast<int>(weights.cols()); }
  int size() const { return static_cast<int>(train_points.size()); }
};

/// Builds the covariance over all training pairs, adds sigma_n^2 (plus a
/// jitter ladder on factorization failure) to the diagonal, factorizes once
/// and solves one weight vector per objective.
/// Throws GpFitError if the matrix is not positive definite after the ladder.
GpModel fit_gp(const Dataset& d, const MixedSpace& s, const KernelHyperparams& hp);

/// Posterior at w: per-objective mean (raw objective scale) and the single
/// shared posterior variance (standardized scale, clamped at 0).
std::pair<Eigen::VectorXd, double> gp_predict(const GpModel& m, const MixedVector& w);

/// Batch form: means as K x M, variances as length-M vector.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> gp_predict_batch(const GpModel& m,
                                                             const std::vector<MixedVector>& ws);

/// Mean squared leave-one-out prediction error over all points and objectives,
/// with the targets used as given (zero-mean prior) and held-out predictions
/// obtained from the closed-form identities of the full factorization.
double loocv_score(const Dataset& d, const MixedSpace& s, const KernelHyperparams& hp);

/// Log-uniform random-search configuration for hyperparameter estimation.
struct HyperSearchConfig {
  int budget = 64;
  std::array<double, 2> lengthscale_bounds{1e-2, 1e1};
  std::array<double, 2> amplitude_bounds{1e-1, 1e1};
  std::array<double, 2> noise_bounds{1e-6, 1e-1};
};

/// Log-space midpoints of the search bounds; also the fallback when every
/// search candidate fails to factorize.
KernelHyperparams midrange_hyperparams(const MixedSpace& s, const HyperSearchConfig& cfg);

/// Returns the candidate minimizing loocv_score on the standardized dataset.
/// Candidates failing factorization are skipped; if all fail, mid-range
/// (log-space midpoint) defaults are returned.
KernelHyperparams fit_hyperparams(const Dataset& d, const MixedSpace& s,
                                  const HyperSearchConfig& cfg, Rng& rng);

}  // namespace mixmobo
