#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "mixmobo/benchmarks.hpp"

using namespace mixmobo;

namespace {

MixedVector all_categorical_point(const std::vector<int>& indices) {
  MixedVector w;
  w.categorical.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i)
    w.categorical[static_cast<Eigen::Index>(i)] = indices[i];
  return w;
}

// The 13-slot layout: bounds cycle with period 7, pieces keyed by slot % 7,
// slots 0-1 continuous, 2-4 ordinal, 5-12 categorical, 5 grid levels each.
std::pair<double, double> slot_bounds(int slot) {
  static const std::vector<std::pair<double, double>> cycle = {
      {0.0, M_PI}, {-5.0, 5.0}, {-10.0, 10.0},          {-5.0, 5.0},
      {-2.0, 2.0}, {-M_PI / 2.0, M_PI / 2.0}, {-30.0, 30.0}};
  return cycle[slot % 7];
}

double piece_value(int slot, double v, double prev) {
  switch (slot % 7) {
    case 0: return std::sin(v);
    case 1: return -(v * v * v * v - 16.0 * v * v + 5.0 * v) / 2.0;
    case 2: return -v * v;
    case 3: return -(10.0 + v * v - 10.0 * std::cos(2.0 * M_PI * v));
    case 4: return -(100.0 * (v - prev * prev) * (v - prev * prev) + (1.0 - v) * (1.0 - v));
    case 5: return std::abs(std::cos(v));
    default: return -v;
  }
}

double grid_level(int slot, int index) {
  const auto [lo, hi] = slot_bounds(slot);
  return linspace(lo, hi, 5)[static_cast<std::size_t>(index)];
}

// Evaluates the 13-slot sum from its published definition for an identity
// encryption, reading ordinal/categorical entries as grid-level indices.
double amalgamated_oracle(const MixedVector& w) {
  std::vector<double> values(13);
  values[0] = w.continuous[0];
  values[1] = w.continuous[1];
  for (int i = 0; i < 3; ++i) values[2 + i] = grid_level(2 + i, w.ordinal[i]);
  for (int i = 0; i < 8; ++i) values[5 + i] = grid_level(5 + i, w.categorical[i]);
  double total = 0.0;
  for (int slot = 0; slot < 13; ++slot)
    total += piece_value(slot, values[slot], slot > 0 ? values[slot - 1] : 0.0);
  return total;
}

double scan_max(int slot, double lo, double hi, int steps) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double v = lo + (hi - lo) * static_cast<double>(i) / steps;
    best = std::max(best, piece_value(slot, v, 0.0));
  }
  return best;
}

}  // namespace

TEST_SUITE("benchmarks") {
  TEST_CASE("linspace covers both endpoints with equal spacing") {
    const auto v = linspace(-5.0, 5.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == -5.0);
    CHECK(v[1] == -2.5);
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 2.5);
    CHECK(v[4] == 5.0);
    CHECK(linspace(0.0, 1.0, 2) == std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
  }

  TEST_CASE("encryption is a seeded bijection on categorical indices") {
    MixedSpace s;
    s.continuous = {{0.0, 1.0}};
    s.categorical = {5, 5, 3};

    const Encryption id = Encryption::identity(s);
    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
      const MixedVector w = sample_uniform(s, rng);
      CHECK(id.apply(w) == w);
    }

    const Encryption enc = make_encryption(s, 11);
    for (int t = 0; t < 1000; ++t) {
      const MixedVector w = sample_uniform(s, rng);
      const MixedVector v = enc.apply(w);
      CHECK(validate_point(v, s));
      CHECK(enc.inverse(v) == w);
      CHECK(v.continuous == w.continuous);
    }

    // each forward table is a permutation
    for (const auto& perm : enc.forward) {
      std::vector<int> sorted = perm;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(sorted[i] == static_cast<int>(i));
    }

    const Encryption other = make_encryption(s, 12);
    CHECK(enc.forward != other.forward);
    CHECK(make_encryption(s, 11).forward == enc.forward);
  }

  TEST_CASE("contamination: prevention everywhere costs exactly the fixed charges") {
    const ContaminationInstance inst = make_contamination_instance(7);
    const MixedVector ones = all_categorical_point(std::vector<int>(21, 1));
    // 21 stages x (0.2 prevention + 0.01 regularization); the chain decays from
    // 0.01 under full prevention, so no stage ever exceeds the 0.1 limit.
    CHECK(f_contamination(ones, inst) == doctest::Approx(-4.41).epsilon(1e-12));

    const MixedVector zeros = all_categorical_point(std::vector<int>(21, 0));
    const double unprotected = f_contamination(zeros, inst);
    CHECK(unprotected <= 0.0);
    CHECK(unprotected >= -21.0);

    // frozen instance: identical value on repeat evaluation
    CHECK(f_contamination(zeros, inst) == unprotected);
    const ContaminationInstance again = make_contamination_instance(7);
    CHECK((again.omega == inst.omega).all());
    CHECK((again.sigma == inst.sigma).all());
    CHECK(f_contamination(zeros, again) == unprotected);
  }

  TEST_CASE("amalgamated matches a from-scratch evaluation of its 13 pieces") {
    const BenchmarkSpec spec = make_benchmark("amalgamated", 3, 0.0);
    REQUIRE(spec.space.num_continuous() == 2);
    REQUIRE(spec.space.num_ordinal() == 3);
    REQUIRE(spec.space.num_categorical() == 8);
    for (int c : spec.space.categorical) CHECK(c == 5);
    CHECK(spec.space.continuous[0].first == 0.0);
    CHECK(spec.space.continuous[0].second == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(spec.space.ordinal[0] == linspace(-10.0, 10.0, 5));
    CHECK(spec.space.ordinal[1] == linspace(-5.0, 5.0, 5));
    CHECK(spec.space.ordinal[2] == linspace(-2.0, 2.0, 5));

    const Encryption id = Encryption::identity(spec.space);
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
      const MixedVector w = sample_uniform(spec.space, rng);
      CHECK(f_amalgamated(w, id) ==
            doctest::Approx(amalgamated_oracle(w)).epsilon(1e-9));
    }
  }

  TEST_CASE("amalgamated single-piece contributions isolate correctly") {
    const BenchmarkSpec spec = make_benchmark("amalgamated", 3, 0.0);
    const Encryption id = Encryption::identity(spec.space);
    Rng rng(6);
    MixedVector w = sample_uniform(spec.space, rng);

    // slot 0 is the sin piece and no other piece reads it
    MixedVector at_peak = w, at_zero = w;
    at_peak.continuous[0] = M_PI / 2.0;
    at_zero.continuous[0] = 0.3;
    CHECK(f_amalgamated(at_peak, id) - f_amalgamated(at_zero, id) ==
          doctest::Approx(1.0 - std::sin(0.3)).epsilon(1e-12));

    // slot 2 (ordinal, -v^2): level index 2 decodes to 0, index 0 to -10
    MixedVector mid = w, low = w;
    mid.ordinal[0] = 2;
    low.ordinal[0] = 0;
    CHECK(f_amalgamated(mid, id) - f_amalgamated(low, id) ==
          doctest::Approx(100.0).epsilon(1e-12));
  }

  TEST_CASE("amalgamated global maximum matches a per-piece enumeration oracle") {
    const BenchmarkSpec spec = make_benchmark("amalgamated", 3, 0.0);

    double expected = 0.0;
    expected += scan_max(0, 0.0, M_PI, 200000);       // continuous sin
    expected += scan_max(1, -5.0, 5.0, 1000000);      // continuous Styblinski-Tang
    // independent grid slots
    for (int slot : {2, 5, 6, 7, 8, 9, 12}) {
      double best = -std::numeric_limits<double>::infinity();
      for (int l = 0; l < 5; ++l) best = std::max(best, piece_value(slot, grid_level(slot, l), 0.0));
      expected += best;
    }
    // the Rastrigin slot feeds the Rosenbrock slot that follows it
    for (int pair_first : {3, 10}) {
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
          const double va = grid_level(pair_first, a);
          const double vb = grid_level(pair_first + 1, b);
          best = std::max(best, piece_value(pair_first, va, 0.0) +
                                    piece_value(pair_first + 1, vb, va));
        }
      expected += best;
    }
    CHECK(spec.global_best[0] == doctest::Approx(expected).epsilon(1e-8));

    // no sampled point beats the registered global
    Rng rng(8);
    for (int t = 0; t < 5000; ++t)
      CHECK(spec.truth(sample_uniform(spec.space, rng))[0] <= spec.global_best[0] + 1e-9);
  }

  TEST_CASE("nk fitness is the mean of component costs") {
    NkLandscape flat;
    flat.genes = 3;
    flat.categories = 2;
    flat.neighbors = {{1}, {0, 2}, {}};
    flat.cost_tables = {std::vector<double>(4, 0.7), std::vector<double>(8, 0.7),
                        std::vector<double>(2, 0.7)};
    Eigen::VectorXi alleles(3);
    alleles << 0, 1, 0;
    CHECK(flat.evaluate(alleles) == doctest::Approx(0.7).epsilon(1e-15));
  }

  TEST_CASE("zero-ruggedness nk landscapes are separable") {
    const NkLandscape nk = make_nk_landscape(6, 3, 0.0, 41);
    for (const auto& n : nk.neighbors) CHECK(n.empty());

    double separable = 0.0;
    for (const auto& table : nk.cost_tables)
      separable += *std::max_element(table.begin(), table.end());
    separable /= 6.0;

    double enumerated = -std::numeric_limits<double>::infinity();
    Eigen::VectorXi a = Eigen::VectorXi::Zero(6);
    for (int code = 0; code < 729; ++code) {
      int rest = code;
      for (int g = 0; g < 6; ++g) {
        a[g] = rest % 3;
        rest /= 3;
      }
      enumerated = std::max(enumerated, nk.evaluate(a));
    }
    CHECK(enumerated == doctest::Approx(separable).epsilon(1e-15));
  }

  TEST_CASE("the nk benchmark's registered global tops random probing") {
    const BenchmarkSpec spec = make_benchmark("nk", 4, 0.0);
    REQUIRE(spec.space.num_categorical() == 8);
    for (int c : spec.space.categorical) CHECK(c == 4);
    REQUIRE(!spec.global_pareto.empty());
    CHECK(spec.truth(spec.global_pareto[0])[0] ==
          doctest::Approx(spec.global_best[0]).epsilon(1e-12));
    Rng rng(9);
    for (int t = 0; t < 2000; ++t)
      CHECK(spec.truth(sample_uniform(spec.space, rng))[0] <= spec.global_best[0] + 1e-12);
  }

  TEST_CASE("rastrigin hand values") {
    const BenchmarkSpec spec = make_benchmark("rastrigin", 1, 0.0);
    REQUIRE(spec.space.num_continuous() == 3);
    REQUIRE(spec.space.num_ordinal() == 6);
    for (const auto& levels : spec.space.ordinal) CHECK(levels == linspace(-5.0, 5.0, 5));

    MixedVector w;
    w.continuous = Eigen::Vector3d(0.0, 0.0, 0.0);
    w.ordinal = Eigen::VectorXi::Constant(6, 2);  // level value 0
    CHECK(spec.truth(w)[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(spec.global_best[0] == doctest::Approx(0.0).epsilon(1e-12));

    w.continuous[0] = 0.5;
    CHECK(spec.truth(w)[0] == doctest::Approx(-20.25).epsilon(1e-12));
    w.continuous[0] = 1.0;
    CHECK(spec.truth(w)[0] == doctest::Approx(-1.0).epsilon(1e-12));
  }

  TEST_CASE("styblinski-tang on its 5-level grid") {
    const BenchmarkSpec spec = make_benchmark("styblinski", 6, 0.0);
    REQUIRE(spec.space.num_categorical() == 10);
    for (int c : spec.space.categorical) CHECK(c == 5);

    const Encryption id = Encryption::identity(spec.space);
    // levels are {-5, -3.125, -1.25, 0.625, 2.5}; all dims at -1.25:
    CHECK(f_styblinski_tang(all_categorical_point(std::vector<int>(10, 2)), id) ==
          doctest::Approx(144.04296875).epsilon(1e-13));
    // all dims at -3.125 is the grid global maximum
    CHECK(f_styblinski_tang(all_categorical_point(std::vector<int>(10, 1)), id) ==
          doctest::Approx(382.537841796875).epsilon(1e-13));
    CHECK(spec.global_best[0] == doctest::Approx(382.537841796875).epsilon(1e-13));

    // encryption invariance: permuted indices see the same function
    const Encryption enc = make_encryption(spec.space, 77);
    Rng rng(10);
    for (int t = 0; t < 200; ++t) {
      const MixedVector latent = sample_uniform(spec.space, rng);
      CHECK(f_styblinski_tang(enc.apply(latent), enc) ==
            doctest::Approx(f_styblinski_tang(latent, id)).epsilon(1e-13));
    }
    REQUIRE(!spec.global_pareto.empty());
    CHECK(spec.truth(spec.global_pareto[0])[0] ==
          doctest::Approx(spec.global_best[0]).epsilon(1e-12));
  }

  TEST_CASE("zdt6 hand values and registered front") {
    const BenchmarkSpec spec = make_benchmark("zdt6", 2, 0.0);
    REQUIRE(spec.num_objectives == 2);
    REQUIRE(spec.space.num_categorical() == 10);

    const Encryption id = Encryption::identity(spec.space);
    // levels are linspace(0, 1, 5) = {0, 0.25, 0.5, 0.75, 1}
    const Eigen::Vector2d at_zero = f_zdt6(all_categorical_point(std::vector<int>(10, 0)), id);
    CHECK(at_zero[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(at_zero[1] == doctest::Approx(0.0).epsilon(1e-15));

    std::vector<int> idx(10, 0);
    idx[0] = 1;  // w1 = 0.25, the rest 0
    const Eigen::Vector2d at_quarter = f_zdt6(all_categorical_point(idx), id);
    const double f1 = std::exp(-1.0) - 1.0;
    CHECK(at_quarter[0] == doctest::Approx(f1).epsilon(1e-12));
    CHECK(at_quarter[1] == doctest::Approx(-(1.0 - f1 * f1)).epsilon(1e-12));

    // registered global: per-objective maxima over the visible 5-point front
    REQUIRE(spec.global_pareto.size() == 5);
    Eigen::Vector2d front_max(-1e300, -1e300);
    for (const auto& w : spec.global_pareto) {
      const Eigen::VectorXd y = spec.truth(w);
      front_max = front_max.cwiseMax(Eigen::Vector2d(y[0], y[1]));
    }
    CHECK(front_max[0] == doctest::Approx(spec.global_best[0]).epsilon(1e-12));
    CHECK(front_max[1] == doctest::Approx(spec.global_best[1]).epsilon(1e-12));
    CHECK(spec.global_best[0] == doctest::Approx(std::exp(-1.0) - 1.0).epsilon(1e-12));
    CHECK(spec.global_best[1] == doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("observation noise has the configured variance") {
    Eigen::VectorXd v(2);
    v << 1.5, -2.0;
    Rng r0(1);
    CHECK((add_observation_noise(v, 0.0, r0) - v).cwiseAbs().maxCoeff() == 0.0);

    Rng r1(5), r2(5);
    CHECK((add_observation_noise(v, 0.005, r1) - add_observation_noise(v, 0.005, r2))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    Rng rng(9);
    const int n = 10000;
    double sum = 0.0, sumsq = 0.0;
    for (int t = 0; t < n; ++t) {
      const double x = add_observation_noise(Eigen::VectorXd::Zero(1), 0.005, rng)[0];
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(var > 0.004);
    CHECK(var < 0.006);
  }

  TEST_CASE("normalized reward interpolates between random and global") {
    CHECK(normalized_reward(5.0, 0.0, 10.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normalized_reward(10.0, 0.0, 10.0) == 1.0);
    CHECK(normalized_reward(0.0, 0.0, 10.0) == 0.0);
    CHECK(normalized_reward(-1.0, 0.0, 10.0) < 0.0);
    CHECK_THROWS_AS(normalized_reward(1.0, 3.0, 3.0), std::invalid_argument);
  }

  TEST_CASE("hamming distance and p-optimum") {
    const MixedVector a = all_categorical_point({0, 1, 2, 3, 0, 1, 2, 3, 0, 1});
    MixedVector b = a;
    CHECK(hamming_distance(a, b) == 0);
    b.categorical[2] = 0;
    b.categorical[7] = 1;
    CHECK(hamming_distance(a, b) == 2);

    CHECK(p_optimum({a, b}, {a}) == 1.0);
    CHECK(p_optimum({b}, {a}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

    // two global points, one matched exactly and one at distance 2
    MixedVector c = a;
    c.categorical[0] = (c.categorical[0] + 1) % 4;
    c.categorical[1] = (c.categorical[1] + 1) % 4;
    CHECK(p_optimum({a}, {a, c}) ==
          doctest::Approx((1.0 + std::exp(-2.0)) / 2.0).epsilon(1e-15));

    CHECK_THROWS_AS(p_optimum({}, {a}), std::invalid_argument);
    CHECK_THROWS_AS(p_optimum({a}, {}), std::invalid_argument);
    MixedVector mixed = a;
    mixed.continuous = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_AS(hamming_distance(a, mixed), std::invalid_argument);
    MixedVector shorter;
    shorter.categorical = Eigen::VectorXi::Zero(4);
    CHECK_THROWS_AS(hamming_distance(a, shorter), std::invalid_argument);
  }

  TEST_CASE("the registry serves exactly the six published benchmarks") {
    const auto names = benchmark_names();
    REQUIRE(names.size() == 6);
    for (const auto& name :
         {"contamination", "amalgamated", "nk", "rastrigin", "styblinski", "zdt6"}) {
      CHECK(std::find(names.begin(), names.end(), name) != names.end());
      const BenchmarkSpec spec = make_benchmark(name, 13, 0.005);
      CHECK(spec.name == name);
      CHECK(spec.noise_variance == 0.005);
      CHECK(spec.instance_seed == 13);
      REQUIRE(spec.output_scales.size() == spec.num_objectives);
      CHECK(spec.output_scales.minCoeff() > 0.0);
      REQUIRE(spec.global_best.size() == spec.num_objectives);

      Rng rng(3);
      const MixedVector w = sample_uniform(spec.space, rng);
      const Eigen::VectorXd y1 = spec.truth(w);
      const Eigen::VectorXd y2 = spec.truth(w);
      REQUIRE(y1.size() == spec.num_objectives);
      CHECK((y1.array() == y2.array()).all());
    }
    CHECK_THROWS_AS(make_benchmark("bogus", 1, 0.0), std::invalid_argument);

    // contamination dimensions and binary choices
    const BenchmarkSpec contamination = make_benchmark("contamination", 21, 0.005);
    REQUIRE(contamination.space.num_categorical() == 21);
    for (int c : contamination.space.categorical) CHECK(c == 2);
    REQUIRE(!contamination.global_pareto.empty());
    CHECK(contamination.truth(contamination.global_pareto[0])[0] ==
          doctest::Approx(contamination.global_best[0]).epsilon(1e-12));
    Rng rng(14);
    for (int t = 0; t < 2000; ++t)
      CHECK(contamination.truth(sample_uniform(contamination.space, rng))[0] <=
            contamination.global_best[0] + 1e-12);
  }
}
