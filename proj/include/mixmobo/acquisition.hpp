#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "mixmobo/gp.hpp"
#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

enum class AcquisitionKind { EI, PI, UCB, SMC };

// Accepts "ei", "pi", "ucb", "smc" (case-insensitive); throws std::invalid_argument otherwise.
AcquisitionKind parse_acquisition(const std::string& name);
std::string acquisition_name(AcquisitionKind kind);

struct AcquisitionParams {
  double ucb_kappa = 2.0;
  double pi_ei_xi = 0.01;
  Eigen::VectorXd incumbents;  // per-objective best observed value (raw scale), length K

  void validate(int num_objectives, AcquisitionKind kind) const;
};

double normal_pdf(double z);
double normal_cdf(double z);

// Per-objective acquisition vectors (length K) evaluated on the surrogate posterior.
// Scores live on the surrogate's standardized objective scale (means and incumbents
// are standardized internally), which makes kappa and xi unit-scale quantities and
// keeps the shared posterior sigma commensurate with the mean terms.
Eigen::VectorXd acq_ei(const GpModel& m, const MixedVector& w, const AcquisitionParams& p);
Eigen::VectorXd acq_pi(const GpModel& m, const MixedVector& w, const AcquisitionParams& p);
Eigen::VectorXd acq_ucb(const GpModel& m, const MixedVector& w, const AcquisitionParams& p);
// Stochastic lower-confidence sampler: mu_k + r with a single shared r ~ U(0, 2 sigma) per call.
Eigen::VectorXd acq_smc(const GpModel& m, const MixedVector& w, Rng& rng);

// Scores one posterior (mu, sigma) directly; lets callers batch the GP predict themselves.
// All inputs must share one scale. For SMC, `unit` in [0,1] sets the shared draw
// r = 2 * sigma * unit; ignored otherwise.
Eigen::VectorXd score_posterior(AcquisitionKind kind, const Eigen::VectorXd& mu, double sigma,
                                const AcquisitionParams& p, double unit = 0.0);

// Map raw-scale posterior means (K x q) and raw incumbents onto the surrogate's
// standardized objective scale for use with score_posterior.
Eigen::MatrixXd standardize_posterior_means(const GpModel& m, const Eigen::MatrixXd& mu);
AcquisitionParams standardize_incumbents(const GpModel& m, const AcquisitionParams& p);

// Batch evaluation (K x q). SMC consumes one uniform draw per point, in index order.
Eigen::MatrixXd evaluate_acquisition_batch(const GpModel& m, AcquisitionKind kind,
                                           const AcquisitionParams& p,
                                           const std::vector<MixedVector>& ws, Rng& rng);

}  // namespace mixmobo
