#pragma once

#include <vector>

#include <Eigen/Core>

#include "mixmobo/gp.hpp"
#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

// Per-epoch nominee record: nominees[l][q] is acquisition l's q-th proposed point.
using NomineeBatch = std::vector<std::vector<MixedVector>>;

// Every completed epoch's nominees, rectangular across epochs (L x Q each).
struct NomineeHistory {
  std::vector<NomineeBatch> epochs;

  int num_epochs() const { return static_cast<int>(epochs.size()); }
  int num_acquisitions() const { return epochs.empty() ? 0 : static_cast<int>(epochs[0].size()); }
  int batch_size() const {
    return epochs.empty() || epochs[0].empty() ? 0 : static_cast<int>(epochs[0][0].size());
  }
  // Throws std::invalid_argument on a shape mismatch with existing epochs.
  void append_epoch(const NomineeBatch& nominees);
};

struct HedgeState {
  double eta = 1.0;
  Eigen::MatrixXd gains;          // L x K accumulated normalized rewards
  Eigen::VectorXd probabilities;  // length L, sums to 1
};

// rewards[j][l] is a K x Q matrix: current posterior means at epoch j's nominees of
// acquisition l. The whole history is re-scored against the current surrogate.
struct RewardTensor {
  std::vector<std::vector<Eigen::MatrixXd>> rewards;
};

RewardTensor compute_rewards(const GpModel& m, const NomineeHistory& h);

// Per objective, min-max normalizes over every epoch/acquisition/slot, then sums each
// acquisition's terms. A degenerate range (max = min) contributes zeros for that objective.
Eigen::MatrixXd normalize_gains(const RewardTensor& t);

// Softmax of per-acquisition gain sums scaled by eta, max-subtracted for overflow safety.
Eigen::VectorXd selection_probabilities(const Eigen::MatrixXd& gains, double eta);

// Full per-epoch pipeline; an empty history yields uniform probabilities and zero gains.
HedgeState compute_hedge_state(const GpModel& m, const NomineeHistory& h, double eta,
                               int num_acquisitions);

struct BatchSelection {
  std::vector<MixedVector> points;
  std::vector<int> chosen;  // drawn acquisition index per slot
};

// Draws an acquisition index per slot independently from probs and takes its q-th nominee.
BatchSelection select_batch_traced(const NomineeBatch& nominees, const Eigen::VectorXd& probs,
                                   int q_total, Rng& rng);
std::vector<MixedVector> select_batch(const NomineeBatch& nominees,
                                      const Eigen::VectorXd& probs, int q_total, Rng& rng);

}  // namespace mixmobo
