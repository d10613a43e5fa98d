#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "mixmobo/acquisition.hpp"
#include "mixmobo/gp.hpp"
#include "mixmobo/rng.hpp"
#include "mixmobo/space.hpp"

namespace mixmobo {

struct GaConfig {
  int population_size = 100;
  int generations = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.0;  // 0 selects the 1/dims default
  int tournament_size = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RankedIndividual {
  MixedVector point;
  Eigen::VectorXd values;
  int front_rank = 1;  // 1-based
  double crowding = 0.0;
};
using RankedPopulation = std::vector<RankedIndividual>;

// Maximization dominance: a >= b componentwise and a != b.
bool dominates(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Fronts as index lists into `values`, best front first; input order kept within a front.
std::vector<std::vector<int>> non_dominated_sort(const std::vector<Eigen::VectorXd>& values);

// Standard NSGA-II crowding on one front: boundary individuals +inf, zero range contributes 0.
std::vector<double> crowding_distance(const std::vector<Eigen::VectorXd>& front_values);

// NSGA-II over the mixed space maximizing the K-vector acquisition; returns the top q
// individuals of the final population ordered by front rank then descending crowding.
// The result is a pure function of the inputs and the stream key; callers must pass a
// stream dedicated to this run (derive a child per call).
std::vector<MixedVector> optimize_acquisition(const GpModel& m, AcquisitionKind kind,
                                              const AcquisitionParams& p, const MixedSpace& s,
                                              int q, const GaConfig& cfg, const Rng& rng);

// Convenience overload seeding the run from cfg.seed.
std::vector<MixedVector> optimize_acquisition(const GpModel& m, AcquisitionKind kind,
                                              const AcquisitionParams& p, const MixedSpace& s,
                                              int q, const GaConfig& cfg);

}  // namespace mixmobo
