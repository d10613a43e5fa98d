#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mixmobo/rng.hpp"

namespace mixmobo {

/// Schema of a mixed design space: box-bounded continuous dimensions,
/// ordinal dimensions given as sorted real level lists, and categorical
/// dimensions given by their cardinality.
struct MixedSpace {
  std::vector<std::pair<double, double>> continuous;  ///< (lower, upper) per dim
  std::vector<std::vector<double>> ordinal;           ///< strictly increasing levels
  std::vector<int> categorical;                       ///< cardinality per dim, >= 2

  int num_continuous() const { return static_cast<int>(continuous.size()); }
  int num_ordinal() const { return static_cast<int>(ordinal.size()); }
  int num_categorical() const { return static_cast<int>(categorical.size()); }
  int dims() const { return num_continuous() + num_ordinal() + num_categorical(); }

  /// Throws std::invalid_argument if any schema invariant is violated.
  void validate() const;
};

/// One design point. Ordinal and categorical entries are stored as indices
/// into the space's level lists / category ranges.
struct MixedVector {
  Eigen::VectorXd continuous;
  Eigen::VectorXi ordinal;
  Eigen::VectorXi categorical;
};

bool operator==(const MixedVector& a, const MixedVector& b);

/// Vector-valued objective oracle; returns one value per objective, larger is better.
using BlackBox = std::function<Eigen::VectorXd(const MixedVector&)>;

/// True iff every coordinate of w lies within s (bounds inclusive).
bool validate_point(const MixedVector& w, const MixedSpace& s);

/// Uniform draw: continuous values uniform on [lo, hi], ordinal and
/// categorical indices uniform over their ranges.
MixedVector sample_uniform(const MixedSpace& s, Rng& rng);

/// Independently per dimension, with probability beta the coordinate is
/// resampled uniformly within its range (the original value may be redrawn).
MixedVector mutate_point(const MixedVector& w, const MixedSpace& s, double beta, Rng& rng);

/// Per-dimension distances as one concatenated vector of length
/// m + n + o (continuous, then ordinal, then categorical):
///   continuous  |x - x'| with the dimension min-max normalized to [0, 1]
///   ordinal     |level - level'| with the level range normalized to [0, 1]
///   categorical Hamming (0 if equal, else 1)
/// Every entry lies in [0, 1].
Eigen::VectorXd mixed_distance_vector(const MixedVector& a, const MixedVector& b,
                                      const MixedSpace& s);

/// Euclidean norm of mixed_distance_vector(a, b, s).
double l2_distance(const MixedVector& a, const MixedVector& b, const MixedSpace& s);

// Declarative JSON document forms.
// Space: {"continuous": [[lo,hi],...], "ordinal": [[levels...],...], "categorical": [C,...]}
// Point: {"continuous": [...], "ordinal": [...], "categorical": [...]}
void to_json(nlohmann::json& j, const MixedSpace& s);
void from_json(const nlohmann::json& j, MixedSpace& s);
void to_json(nlohmann::json& j, const MixedVector& w);
void from_json(const nlohmann::json& j, MixedVector& w);

}  // namespace mixmobo
