#include "mixmobo/hedge.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mixmobo {

void NomineeHistory::append_epoch(const NomineeBatch& nominees) {
  if (nominees.empty() || nominees[0].empty())
    throw std::invalid_argument("nominee history: empty epoch");
  for (const auto& per_acq : nominees)
    if (per_acq.size() != nominees[0].size())
      throw std::invalid_argument("nominee history: ragged slot counts");
  if (!epochs.empty() && (static_cast<int>(nominees.size()) != num_acquisitions() ||
                          static_cast<int>(nominees[0].size()) != batch_size()))
    throw std::invalid_argument("nominee history: epoch shape mismatch");
  epochs.push_back(nominees);
}

RewardTensor compute_rewards(const GpModel& m, const NomineeHistory& h) {
  if (h.num_epochs() == 0) throw std::invalid_argument("compute_rewards: empty history");
  const int l_count = h.num_acquisitions();
  const int q_count = h.batch_size();

  // One flat batched predict over the whole history, scattered back afterwards.
  std::vector<MixedVector> flat;
  flat.reserve(static_cast<std::size_t>(h.num_epochs()) * l_count * q_count);
  for (const auto& epoch : h.epochs)
    for (const auto& per_acq : epoch)
      for (const auto& w : per_acq) flat.push_back(w);
  const Eigen::MatrixXd means = gp_predict_batch(m, flat).first;  // K x total

  RewardTensor t;
  t.rewards.resize(h.num_epochs());
  int col = 0;
  for (int j = 0; j < h.num_epochs(); ++j) {
    t.rewards[j].resize(l_count);
    for (int l = 0; l < l_count; ++l) {
      t.rewards[j][l] = means.middleCols(col, q_count);
      col += q_count;
    }
  }
  return t;
}

Eigen::MatrixXd normalize_gains(const RewardTensor& t) {
  if (t.rewards.empty() || t.rewards[0].empty())
    throw std::invalid_argument("normalize_gains: empty tensor");
  const int l_count = static_cast<int>(t.rewards[0].size());
  const int k = static_cast<int>(t.rewards[0][0].rows());

  Eigen::VectorXd lo = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::infinity());
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(k, -std::numeric_limits<double>::infinity());
  for (const auto& epoch : t.rewards)
    for (const auto& r : epoch) {
      lo = lo.cwiseMin(r.rowwise().minCoeff());
      hi = hi.cwiseMax(r.rowwise().maxCoeff());
    }

  Eigen::MatrixXd gains = Eigen::MatrixXd::Zero(l_count, k);
  for (const auto& epoch : t.rewards)
    for (int l = 0; l < l_count; ++l)
      for (int obj = 0; obj < k; ++obj) {
        const double range = hi[obj] - lo[obj];
        if (range <= 0.0) continue;
        gains(l, obj) += (epoch[l].row(obj).array() - lo[obj]).sum() / range;
      }
  return gains;
}

Eigen::VectorXd selection_probabilities(const Eigen::MatrixXd& gains, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("hedge: eta must be > 0");
  const Eigen::VectorXd sums = gains.rowwise().sum();
  const Eigen::ArrayXd z = eta * (sums.array() - sums.maxCoeff());
  const Eigen::ArrayXd e = z.exp();
  return (e / e.sum()).matrix();
}

HedgeState compute_hedge_state(const GpModel& m, const NomineeHistory& h, double eta,
                               int num_acquisitions) {
  if (!(eta > 0.0)) throw std::invalid_argument("hedge: eta must be > 0");
  if (num_acquisitions < 1) throw std::invalid_argument("hedge: need at least one acquisition");
  HedgeState st;
  st.eta = eta;
  if (h.num_epochs() == 0) {
    st.gains = Eigen::MatrixXd::Zero(num_acquisitions, m.num_objectives());
    st.probabilities =
        Eigen::VectorXd::Constant(num_acquisitions, 1.0 / num_acquisitions);
    return st;
  }
  if (h.num_acquisitions() != num_acquisitions)
    throw std::invalid_argument("hedge: history acquisition count mismatch");
  st.gains = normalize_gains(compute_rewards(m, h));
  st.probabilities = selection_probabilities(st.gains, eta);
  return st;
}

BatchSelection select_batch_traced(const NomineeBatch& nominees, const Eigen::VectorXd& probs,
                                   int q_total, Rng& rng) {
  if (nominees.empty() || nominees[0].empty())
    throw std::invalid_argument("select_batch: empty nominees");
  if (static_cast<int>(nominees.size()) != probs.size())
    throw std::invalid_argument("select_batch: probability length mismatch");
  if (q_total < 1 || q_total > static_cast<int>(nominees[0].size()))
    throw std::invalid_argument("select_batch: q_total out of range");
  if (probs.minCoeff() < 0.0 || std::abs(probs.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("select_batch: probabilities must be a distribution");

  BatchSelection out;
  out.points.reserve(q_total);
  out.chosen.reserve(q_total);
  for (int q = 0; q < q_total; ++q) {
    const double u = rng.uniform();
    double acc = 0.0;
    int chosen = static_cast<int>(nominees.size()) - 1;
    for (int l = 0; l < static_cast<int>(nominees.size()); ++l) {
      acc += probs[l];
      if (u < acc) {
        chosen = l;
        break;
      }
    }
    out.points.push_back(nominees[chosen][q]);
    out.chosen.push_back(chosen);
  }
  return out;
}

std::vector<MixedVector> select_batch(const NomineeBatch& nominees,
                                      const Eigen::VectorXd& probs, int q_total, Rng& rng) {
  return select_batch_traced(nominees, probs, q_total, rng).points;
}

}  // namespace mixmobo
