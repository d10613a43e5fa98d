#include "mixmobo/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <string>

namespace mixmobo {

namespace {

// Squared per-dimension distances for all training pairs, one n x n matrix per
// dimension, so that candidate kernels can be rebuilt without re-walking points.
struct PairwiseSq {
  std::vector<Eigen::MatrixXd> per_dim;
};

PairwiseSq pairwise_squared_distances(const std::vector<MixedVector>& pts, const MixedSpace& s) {
  const int n = static_cast<int>(pts.size());
  PairwiseSq out;
  out.per_dim.assign(s.dims(), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd d = mixed_distance_vector(pts[i], pts[j], s);
      for (int k = 0; k < s.dims(); ++k) {
        const double sq = d[k] * d[k];
        out.per_dim[k](i, j) = sq;
        out.per_dim[k](j, i) = sq;
      }
    }
  return out;
}

// Scaled squared distances past this bound map to a kernel value of exactly
// zero. The true value there is below 1e-260; keeping it nonzero seeds
// subnormal operands that stall the downstream factorizations and GEMMs.
constexpr double kKernelSqCutoff = 1200.0;

Eigen::MatrixXd kernel_from_sq(const Eigen::ArrayXXd& sq, double amp2) {
  return (amp2 * (-0.5 * sq.min(kKernelSqCutoff)).exp() * (sq <= kKernelSqCutoff).cast<double>())
      .matrix();
}

Eigen::MatrixXd build_gram(const PairwiseSq& sq, const KernelHyperparams& hp) {
  const int n = static_cast<int>(sq.per_dim.empty() ? 0 : sq.per_dim[0].rows());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < sq.per_dim.size(); ++k)
    q += sq.per_dim[k] / (hp.lengthscales[static_cast<int>(k)] * hp.lengthscales[static_cast<int>(k)]);
  const double amp2 = hp.signal_amplitude * hp.signal_amplitude;
  return kernel_from_sq(q.array(), amp2);
}

// Factorizes gram + (noise + jitter) I, walking the jitter ladder
// 0, 1e-10, 1e-9, ..., 1e-6 until the factorization succeeds.
std::pair<Eigen::LLT<Eigen::MatrixXd>, double> factorize_with_jitter(
    const Eigen::MatrixXd& gram, double noise_variance) {
  const int n = static_cast<int>(gram.rows());
  double jitter = 0.0;
  for (;;) {
    Eigen::MatrixXd a = gram;
    a.diagonal().array() += noise_variance + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) return {llt, jitter};
    if (jitter == 0.0)
      jitter = 1e-10;
    else if (jitter < 1e-6)
      jitter *= 10.0;
    else
      throw GpFitError("covariance not positive definite after jitter ladder (n=" +
                       std::to_string(n) + ")");
  }
}

// Lengthscale-scaled feature encoding with the property that the squared
// euclidean distance between two encoded columns equals d^T M d of Eq.-style
// mixed distance: numeric dims contribute value/(span * h); categorical dims
// contribute a one-hot block scaled by 1/(sqrt(2) * h), so differing
// categories add exactly 1/h^2. Enables batch kernels via one GEMM.
Eigen::MatrixXd encode_features(const std::vector<MixedVector>& pts, const MixedSpace& s,
                                const KernelHyperparams& hp) {
  int rows = s.num_continuous() + s.num_ordinal();
  for (int c : s.categorical) rows += c;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(rows, static_cast<int>(pts.size()));
  for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
    const MixedVector& w = pts[j];
    int r = 0;
    int d = 0;
    for (int i = 0; i < s.num_continuous(); ++i, ++d)
      f(r++, j) = w.continuous[i] /
                  ((s.continuous[i].second - s.continuous[i].first) * hp.lengthscales[d]);
    for (int i = 0; i < s.num_ordinal(); ++i, ++d) {
      const auto& levels = s.ordinal[i];
      f(r++, j) = levels[w.ordinal[i]] / ((levels.back() - levels.front()) * hp.lengthscales[d]);
    }
    for (int i = 0; i < s.num_categorical(); ++i, ++d) {
      f(r + w.categorical[i], j) = 1.0 / (std::sqrt(2.0) * hp.lengthscales[d]);
      r += s.categorical[i];
    }
  }
  return f;
}

struct Standardization {
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
};

// Per-objective center/scale; degenerate scales (constant objective) map to 1.
Standardization objective_standardization(const Eigen::MatrixXd& objectives) {
  const int k = static_cast<int>(objectives.rows());
  const int n = static_cast<int>(objectives.cols());
  Standardization st;
  st.means = objectives.rowwise().mean();
  st.stds.resize(k);
  for (int i = 0; i < k; ++i) {
    const double var = (objectives.row(i).array() - st.means[i]).square().mean();
    const double sd = std::sqrt(var);
    st.stds[i] = (sd > 1e-12 && n > 1) ? sd : 1.0;
  }
  return st;
}

Eigen::VectorXd log_uniform(Rng& rng, double lo, double hi, int count) {
  Eigen::VectorXd v(count);
  for (int i = 0; i < count; ++i) v[i] = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  return v;
}

}  // namespace

void KernelHyperparams::validate(int dims) const {
  if (lengthscales.size() != dims)
    throw std::invalid_argument("hyperparams: lengthscale count must equal dimension count");
  if (!(lengthscales.array() > 0.0).all())
    throw std::invalid_argument("hyperparams: lengthscales must be > 0");
  if (!(signal_amplitude > 0.0)) throw std::invalid_argument("hyperparams: amplitude must be > 0");
  if (noise_variance < 0.0) throw std::invalid_argument("hyperparams: noise variance must be >= 0");
}

void Dataset::append(const MixedVector& w, const Eigen::VectorXd& values) {
  if (size() == 0 && objectives.rows() == 0) objectives.resize(values.size(), 0);
  if (values.size() != objectives.rows())
    throw std::invalid_argument("dataset: objective count mismatch");
  points.push_back(w);
  objectives.conservativeResize(Eigen::NoChange, objectives.cols() + 1);
  objectives.col(objectives.cols() - 1) = values;
}

Eigen::VectorXd best_observed(const Dataset& d) {
  if (d.size() == 0) throw std::invalid_argument("dataset: empty");
  return d.objectives.rowwise().maxCoeff();
}

double kernel_eval(const MixedVector& w, const MixedVector& w2, const MixedSpace& s,
                   const KernelHyperparams& hp) {
  const Eigen::VectorXd d = mixed_distance_vector(w, w2, s);
  const double q = (d.array() / hp.lengthscales.array()).square().sum();
  return hp.signal_amplitude * hp.signal_amplitude * std::exp(-0.5 * q);
}

GpModel fit_gp(const Dataset& d, const MixedSpace& s, const KernelHyperparams& hp) {
  if (d.size() < 1) throw std::invalid_argument("fit_gp: need at least one point");
  hp.validate(s.dims());
  const int n = d.size();
  const int k = d.num_objectives();

  const auto st = objective_standardization(d.objectives);
  Eigen::MatrixXd y = d.objectives;
  y.colwise() -= st.means;
  y.array().colwise() /= st.stds.array();

  const PairwiseSq sq = pairwise_squared_distances(d.points, s);
  const Eigen::MatrixXd gram = build_gram(sq, hp);
  auto [llt, jitter] = factorize_with_jitter(gram, hp.noise_variance);

  GpModel m;
  m.space = s;
  m.hyperparams = hp;
  m.train_points = d.points;
  m.chol_lower = llt.matrixL();
  m.weights.resize(n, k);
  for (int i = 0; i < k; ++i) m.weights.col(i) = llt.solve(y.row(i).transpose());
  m.inv_chol_lower =
      m.chol_lower.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  m.objective_means = st.means;
  m.objective_stds = st.stds;
  m.jitter = jitter;
  m.train_features = encode_features(d.points, s, hp);
  m.train_sqnorms = m.train_features.colwise().squaredNorm();
  return m;
}

std::pair<Eigen::VectorXd, double> gp_predict(const GpModel& m, const MixedVector& w) {
  auto [means, vars] = gp_predict_batch(m, {w});
  return {means.col(0), vars[0]};
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> gp_predict_batch(const GpModel& m,
                                                             const std::vector<MixedVector>& ws) {
  const Eigen::MatrixXd qf = encode_features(ws, m.space, m.hyperparams);
  const Eigen::VectorXd qn = qf.colwise().squaredNorm();
  Eigen::MatrixXd sq = -2.0 * (m.train_features.transpose() * qf);  // n x q
  sq.colwise() += m.train_sqnorms;
  sq.rowwise() += qn.transpose();
  const double amp2 = m.hyperparams.signal_amplitude * m.hyperparams.signal_amplitude;
  const Eigen::MatrixXd kstar = kernel_from_sq(sq.array().max(0.0), amp2);

  Eigen::MatrixXd means = (kstar.transpose() * m.weights).transpose();  // K x q, standardized
  means.array().colwise() *= m.objective_stds.array();
  means.colwise() += m.objective_means;

  const Eigen::MatrixXd v = m.inv_chol_lower * kstar;  // GEMM beats a triangular solve here
  const double prior = m.hyperparams.signal_amplitude * m.hyperparams.signal_amplitude;
  Eigen::VectorXd vars =
      (prior - v.colwise().squaredNorm().array()).max(0.0).matrix().transpose();
  return {means, vars};
}

namespace {

double loocv_core(const PairwiseSq& sq, const Eigen::MatrixXd& objectives,
                  const KernelHyperparams& hp) {
  const int n = static_cast<int>(objectives.cols());
  const Eigen::MatrixXd gram = build_gram(sq, hp);
  auto [llt, jitter] = factorize_with_jitter(gram, hp.noise_variance);
  (void)jitter;

  // diag(A^-1) via column norms of L^-1: A^-1 = L^-T L^-1, so (A^-1)_ii = |L^-1 e_i|^2.
  const Eigen::MatrixXd linv = Eigen::MatrixXd(llt.matrixL())
                                   .triangularView<Eigen::Lower>()
                                   .solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::VectorXd ainv_diag = linv.colwise().squaredNorm();
  // held-out residual for point i: alpha_i / (A^-1)_ii
  double sum = 0.0;
  for (int k = 0; k < objectives.rows(); ++k) {
    const Eigen::VectorXd alpha = llt.solve(objectives.row(k).transpose());
    sum += (alpha.array() / ainv_diag.array()).square().sum();
  }
  return sum / (static_cast<double>(n) * objectives.rows());
}

}  // namespace

double loocv_score(const Dataset& d, const MixedSpace& s, const KernelHyperparams& hp) {
  if (d.size() < 2) throw std::invalid_argument("loocv_score: need at least two points");
  hp.validate(s.dims());
  return loocv_core(pairwise_squared_distances(d.points, s), d.objectives, hp);
}

KernelHyperparams midrange_hyperparams(const MixedSpace& s, const HyperSearchConfig& cfg) {
  KernelHyperparams hp;
  hp.lengthscales = Eigen::VectorXd::Constant(
      s.dims(), std::sqrt(cfg.lengthscale_bounds[0] * cfg.lengthscale_bounds[1]));
  hp.signal_amplitude = std::sqrt(cfg.amplitude_bounds[0] * cfg.amplitude_bounds[1]);
  hp.noise_variance = std::sqrt(cfg.noise_bounds[0] * cfg.noise_bounds[1]);
  return hp;
}

KernelHyperparams fit_hyperparams(const Dataset& d, const MixedSpace& s,
                                  const HyperSearchConfig& cfg, Rng& rng) {
  if (d.size() < 2) throw std::invalid_argument("fit_hyperparams: need at least two points");
  if (cfg.budget < 1) throw std::invalid_argument("fit_hyperparams: budget must be >= 1");

  const auto st = objective_standardization(d.objectives);
  Eigen::MatrixXd y = d.objectives;
  y.colwise() -= st.means;
  y.array().colwise() /= st.stds.array();
  const PairwiseSq sq = pairwise_squared_distances(d.points, s);

  KernelHyperparams best = midrange_hyperparams(s, cfg);
  double best_score = std::numeric_limits<double>::infinity();

  for (int c = 0; c < cfg.budget; ++c) {
    KernelHyperparams cand;
    cand.lengthscales =
        log_uniform(rng, cfg.lengthscale_bounds[0], cfg.lengthscale_bounds[1], s.dims());
    cand.signal_amplitude = log_uniform(rng, cfg.amplitude_bounds[0], cfg.amplitude_bounds[1], 1)[0];
    cand.noise_variance = log_uniform(rng, cfg.noise_bounds[0], cfg.noise_bounds[1], 1)[0];
    try {
      const double score = loocv_core(sq, y, cand);
      if (std::isfinite(score) && score < best_score) {
        best_score = score;
        best = cand;
      }
    } catch (const GpFitError&) {
      // skip degenerate candidate; mid-range defaults remain the fallback
    }
  }
  return best;
}

}  // namespace mixmobo
