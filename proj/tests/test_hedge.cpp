#include <cmath>
#include <vector>

#include <doctest.h>

#include "mixmobo/hedge.hpp"

using namespace mixmobo;

namespace {

MixedSpace hedge_space() {
  MixedSpace s;
  s.continuous = {{0.0, 1.0}, {0.0, 2.0}};
  s.categorical = {3};
  return s;
}

Dataset hedge_dataset(int k) {
  const MixedSpace s = hedge_space();
  Rng rng(11);
  Dataset d;
  for (int i = 0; i < 8; ++i) {
    const MixedVector w = sample_uniform(s, rng);
    Eigen::VectorXd y(k);
    for (int j = 0; j < k; ++j) y[j] = std::sin(4.0 * w.continuous[0] + j) + w.continuous[1];
    d.append(w, y);
  }
  return d;
}

GpModel hedge_model(int k, double noise) {
  KernelHyperparams hp;
  hp.lengthscales = Eigen::VectorXd::Constant(hedge_space().dims(), 0.7);
  hp.signal_amplitude = 1.2;
  hp.noise_variance = noise;
  return fit_gp(hedge_dataset(k), hedge_space(), hp);
}

NomineeBatch sampled_batch(int l, int q, Rng& rng) {
  NomineeBatch b(l);
  for (auto& row : b) {
    row.reserve(q);
    for (int i = 0; i < q; ++i) row.push_back(sample_uniform(hedge_space(), rng));
  }
  return b;
}

RewardTensor tensor_1epoch_l2(double r0, double r1) {
  RewardTensor t;
  t.rewards = {{Eigen::MatrixXd::Constant(1, 1, r0), Eigen::MatrixXd::Constant(1, 1, r1)}};
  return t;
}

}  // namespace

TEST_SUITE("hedge") {
  TEST_CASE("nominee history enforces a rectangular shape") {
    Rng rng(1);
    NomineeHistory h;
    CHECK_THROWS_AS(h.append_epoch({}), std::invalid_argument);
    const NomineeBatch good = sampled_batch(3, 2, rng);
    h.append_epoch(good);
    CHECK(h.num_epochs() == 1);
    CHECK(h.num_acquisitions() == 3);
    CHECK(h.batch_size() == 2);

    NomineeBatch ragged = sampled_batch(3, 2, rng);
    ragged[1].pop_back();
    CHECK_THROWS_AS(h.append_epoch(ragged), std::invalid_argument);
    CHECK_THROWS_AS(h.append_epoch(sampled_batch(2, 2, rng)), std::invalid_argument);
    CHECK_THROWS_AS(h.append_epoch(sampled_batch(3, 1, rng)), std::invalid_argument);
    h.append_epoch(sampled_batch(3, 2, rng));
    CHECK(h.num_epochs() == 2);
  }

  TEST_CASE("rewards are the current posterior means at historical nominees") {
    const GpModel m = hedge_model(2, 1e-10);
    Rng rng(5);
    NomineeHistory h;
    h.append_epoch(sampled_batch(2, 3, rng));
    h.append_epoch(sampled_batch(2, 3, rng));

    const RewardTensor t = compute_rewards(m, h);
    REQUIRE(t.rewards.size() == 2);
    for (int j = 0; j < 2; ++j) {
      REQUIRE(t.rewards[j].size() == 2);
      for (int l = 0; l < 2; ++l) {
        const Eigen::MatrixXd& r = t.rewards[j][l];
        REQUIRE(r.rows() == 2);
        REQUIRE(r.cols() == 3);
        for (int q = 0; q < 3; ++q) {
          const auto post = gp_predict(m, h.epochs[j][l][q]);
          CHECK((r.col(q) - post.first).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }

  TEST_CASE("a near-noiseless training point is rewarded with its observed values") {
    const Dataset d = hedge_dataset(2);
    const GpModel m = hedge_model(2, 1e-10);
    NomineeHistory h;
    h.append_epoch({{d.points[0]}, {d.points[3]}});
    const RewardTensor t = compute_rewards(m, h);
    CHECK((t.rewards[0][0].col(0) - d.objectives.col(0)).cwiseAbs().maxCoeff() < 1e-3);
    CHECK((t.rewards[0][1].col(0) - d.objectives.col(3)).cwiseAbs().maxCoeff() < 1e-3);
  }

  TEST_CASE("min-max gain normalization") {
    const Eigen::MatrixXd g = normalize_gains(tensor_1epoch_l2(1.0, 3.0));
    REQUIRE(g.rows() == 2);
    REQUIRE(g.cols() == 1);
    CHECK(g(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g(1, 0) == doctest::Approx(1.0).epsilon(1e-15));

    // all rewards identical: degenerate range contributes zeros
    const Eigen::MatrixXd flat = normalize_gains(tensor_1epoch_l2(2.5, 2.5));
    CHECK(flat.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("gains are invariant to per-objective affine reward transforms") {
    Rng rng(17);
    RewardTensor t;
    const int epochs = 3, l = 4, k = 2, q = 2;
    t.rewards.resize(epochs);
    for (auto& ep : t.rewards) {
      ep.resize(l);
      for (auto& r : ep) {
        r.resize(k, q);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < q; ++b) r(a, b) = rng.uniform(-30.0, 40.0);
      }
    }
    RewardTensor scaled = t;
    const double a0 = 7.5, b0 = -3.0, a1 = 0.02, b1 = 1000.0;
    for (auto& ep : scaled.rewards)
      for (auto& r : ep) {
        r.row(0) = (a0 * r.row(0).array() + b0).matrix();
        r.row(1) = (a1 * r.row(1).array() + b1).matrix();
      }
    const Eigen::MatrixXd g = normalize_gains(t);
    const Eigen::MatrixXd gs = normalize_gains(scaled);
    CHECK((g - gs).cwiseAbs().maxCoeff() < 1e-12);
    // each objective's normalized contribution stays within [0, epochs * Q]
    CHECK(g.minCoeff() >= 0.0);
    CHECK(g.maxCoeff() <= epochs * q + 1e-12);
  }

  TEST_CASE("selection probabilities follow the softmax of gain sums") {
    CHECK(selection_probabilities(Eigen::MatrixXd::Constant(1, 2, 0.4), 1.0)[0] == 1.0);

    const Eigen::VectorXd uniform =
        selection_probabilities(Eigen::MatrixXd::Constant(4, 2, 1.3), 2.0);
    for (int i = 0; i < 4; ++i) CHECK(uniform[i] == doctest::Approx(0.25).epsilon(1e-15));

    Eigen::MatrixXd gains(2, 1);
    gains << 1.0, 0.0;
    const Eigen::VectorXd p = selection_probabilities(gains, 1.0);
    const double e = std::exp(1.0);
    CHECK(p[0] == doctest::Approx(e / (e + 1.0)).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(1.0 / (e + 1.0)).epsilon(1e-12));
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);

    // invariant to adding a constant to every gain sum
    Eigen::MatrixXd shifted = gains;
    shifted.array() += 123.0;
    CHECK((selection_probabilities(shifted, 1.0) - p).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("empty history yields uniform probabilities and zero gains") {
    const GpModel m = hedge_model(2, 1e-4);
    const HedgeState st = compute_hedge_state(m, NomineeHistory{}, 1.0, 4);
    REQUIRE(st.probabilities.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(st.probabilities[i] == doctest::Approx(0.25).epsilon(1e-15));
    REQUIRE(st.gains.rows() == 4);
    REQUIRE(st.gains.cols() == 2);
    CHECK(st.gains.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("hedge state probabilities always sum to one") {
    const GpModel m = hedge_model(2, 1e-4);
    Rng rng(23);
    NomineeHistory h;
    for (int ep = 0; ep < 5; ++ep) {
      h.append_epoch(sampled_batch(4, 2, rng));
      const HedgeState st = compute_hedge_state(m, h, 1.0, 4);
      CHECK(std::abs(st.probabilities.sum() - 1.0) < 1e-12);
      CHECK(st.probabilities.minCoeff() >= 0.0);
    }
  }

  TEST_CASE("batch selection takes the q-th nominee of the drawn acquisition") {
    Rng seeder(31);
    const NomineeBatch nominees = sampled_batch(3, 4, seeder);

    Eigen::VectorXd degenerate(3);
    degenerate << 0.0, 1.0, 0.0;
    Rng rng(2);
    const BatchSelection sel = select_batch_traced(nominees, degenerate, 4, rng);
    REQUIRE(sel.points.size() == 4);
    REQUIRE(sel.chosen == std::vector<int>(4, 1));
    for (int q = 0; q < 4; ++q) CHECK(sel.points[q] == nominees[1][q]);

    Rng r1(77), r2(77);
    const auto a = select_batch(nominees, degenerate, 3, r1);
    const auto b = select_batch(nominees, degenerate, 3, r2);
    CHECK(a == b);
  }

  TEST_CASE("uniform probabilities pick each acquisition about half the time") {
    Rng seeder(41);
    const NomineeBatch nominees = sampled_batch(2, 1, seeder);
    const Eigen::VectorXd probs = Eigen::VectorXd::Constant(2, 0.5);
    Rng rng(55);
    int first = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
      if (select_batch_traced(nominees, probs, 1, rng).chosen[0] == 0) ++first;
    CHECK(first > trials * 0.48);
    CHECK(first < trials * 0.52);
  }

  TEST_CASE("batch selection validates its inputs") {
    Rng seeder(51);
    const NomineeBatch nominees = sampled_batch(2, 2, seeder);
    Rng rng(1);
    Eigen::VectorXd bad_sum(2);
    bad_sum << 0.5, 0.6;
    CHECK_THROWS_AS(select_batch(nominees, bad_sum, 2, rng), std::invalid_argument);
    Eigen::VectorXd negative(2);
    negative << 1.4, -0.4;
    CHECK_THROWS_AS(select_batch(nominees, negative, 2, rng), std::invalid_argument);
    const Eigen::VectorXd ok = Eigen::VectorXd::Constant(2, 0.5);
    CHECK_THROWS_AS(select_batch(nominees, ok, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(select_batch(nominees, Eigen::VectorXd::Constant(3, 1.0 / 3), 2, rng),
                    std::invalid_argument);
  }
}
