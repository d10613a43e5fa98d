#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "mixmobo/acquisition.hpp"
#include "mixmobo/gp.hpp"
#include "mixmobo/hedge.hpp"
#include "mixmobo/moga.hpp"
#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

struct OptimizerConfig {
  int n_init = 50;
  int epochs = 10;
  int batch_size = 1;  ///< Q
  double mutation_rate = 0.25;  ///< beta used by dedup mutation
  double dedup_tolerance = 1e-6;
  bool dedup_against_dataset = true;  ///< extends batch dedup to dataset proximity
  int dedup_max_retries = 100;
  std::vector<AcquisitionKind> portfolio{AcquisitionKind::EI, AcquisitionKind::PI,
                                         AcquisitionKind::UCB, AcquisitionKind::SMC};
  GaConfig ga;
  double ucb_kappa = 2.0;
  double pi_ei_xi = 0.01;
  double eta = 1.0;
  std::uint64_t seed = 0;
  int num_objectives = 1;
  HyperSearchConfig hyper;

  void validate() const;
};

/// Audit record of one completed epoch.
struct EpochLog {
  int epoch = 0;
  Eigen::VectorXd hedge_probabilities;
  std::vector<int> chosen_acquisitions;  ///< per batch slot
  std::vector<MixedVector> selected;
  Eigen::MatrixXd observed;  ///< K x Q
  std::vector<std::string> warnings;
  bool gp_fallback = false;
};

struct OptimizerState {
  MixedSpace space;
  OptimizerConfig config;
  Dataset dataset;
  NomineeHistory history;
  int epoch = 0;  ///< completed epochs

  /// Outstanding ask, if any. While the dataset holds fewer than n_init
  /// points, asks replay the initialization stream Q points at a time;
  /// afterwards asks return GA-nominated Q-batches.
  struct PendingAsk {
    bool init = false;
    std::vector<MixedVector> points;
    NomineeBatch nominees;
    Eigen::VectorXd hedge_probabilities;
    std::vector<int> chosen_acquisitions;
    std::vector<std::string> warnings;
    bool gp_fallback = false;
  };
  std::optional<PendingAsk> pending_ask;

  /// In-memory audit trail; not part of the serialized snapshot.
  std::vector<EpochLog> logs;
};

struct ParetoSet {
  std::vector<MixedVector> points;
  Eigen::MatrixXd values;  ///< K x |points|
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

OptimizerState make_state(const MixedSpace& s, const OptimizerConfig& cfg);

/// Evaluates n_init uniform samples; counts against the evaluation budget.
Dataset initialize_dataset(const BlackBox& f, const MixedSpace& s, int n_init, Rng& rng);

struct ProposeResult {
  std::vector<MixedVector> selected;
  NomineeBatch nominees;  ///< post-dedup, L x Q
  HedgeState hedge;
  std::vector<int> chosen_acquisitions;
  std::vector<std::string> warnings;
  bool gp_fallback = false;
};

/// Alg.-1 steps 4..7 for the next epoch: surrogate fit, per-acquisition GA
/// nomination, dedup, HedgeMO selection. Pure with respect to the state.
ProposeResult propose_batch(const OptimizerState& st);

/// Replaces any batch member within tol of an earlier member (or, when enabled,
/// of a dataset point) by mutation, with a bounded retry count per member.
std::vector<MixedVector> dedup_mutate(const std::vector<MixedVector>& batch, const Dataset& d,
                                      const MixedSpace& s, double beta, double tol, Rng& rng,
                                      bool against_dataset = true, int max_retries = 100,
                                      std::vector<std::string>* warnings = nullptr);

/// propose + evaluate + commit; the state is left untouched if evaluation throws.
void run_epoch(OptimizerState& st, const BlackBox& f);

/// Runs initialization plus cfg.epochs full epochs against f.
OptimizerState run_optimization(const MixedSpace& s, const OptimizerConfig& cfg,
                                const BlackBox& f);

ParetoSet extract_pareto_set(const Dataset& d);

/// Decoupled evaluation protocol: ask returns the points awaiting evaluation
/// (init batch first, then Q-batches), tell supplies their observed values.
/// Ask twice without tell, tell without ask, or telling points that differ
/// from the outstanding ask raise ProtocolError.
std::vector<MixedVector> ask(OptimizerState& st);
void tell(OptimizerState& st, const std::vector<MixedVector>& points,
          const Eigen::MatrixXd& values);

nlohmann::json config_to_json(const OptimizerConfig& cfg);
OptimizerConfig config_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const OptimizerState& st);
OptimizerState state_from_json(const nlohmann::json& j);

}  // namespace mixmobo
