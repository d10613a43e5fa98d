#include "mixmobo/acquisition.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mixmobo {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

Eigen::VectorXd ei_from_posterior(const Eigen::VectorXd& mu, double sigma,
                                  const AcquisitionParams& p) {
  Eigen::VectorXd out(mu.size());
  for (int k = 0; k < mu.size(); ++k) {
    const double delta = mu[k] - p.incumbents[k] - p.pi_ei_xi;
    if (sigma <= 0.0) {
      out[k] = std::max(delta, 0.0);
    } else {
      const double z = delta / sigma;
      out[k] = std::max(delta * normal_cdf(z) + sigma * normal_pdf(z), 0.0);
    }
  }
  return out;
}

Eigen::VectorXd pi_from_posterior(const Eigen::VectorXd& mu, double sigma,
                                  const AcquisitionParams& p) {
  Eigen::VectorXd out(mu.size());
  for (int k = 0; k < mu.size(); ++k) {
    const double delta = mu[k] - p.incumbents[k] - p.pi_ei_xi;
    out[k] = sigma <= 0.0 ? (delta > 0.0 ? 1.0 : 0.0) : normal_cdf(delta / sigma);
  }
  return out;
}

// All scoring happens on the surrogate's standardized objective scale so
// kappa, xi and the SMC draw are unit-scale quantities regardless of the
// raw objective magnitudes.
Eigen::VectorXd standardize_values(const GpModel& m, const Eigen::VectorXd& raw) {
  return (raw - m.objective_means).cwiseQuotient(m.objective_stds);
}

}  // namespace

Eigen::MatrixXd standardize_posterior_means(const GpModel& m, const Eigen::MatrixXd& mu) {
  return ((mu.colwise() - m.objective_means).array().colwise() / m.objective_stds.array())
      .matrix();
}

AcquisitionParams standardize_incumbents(const GpModel& m, const AcquisitionParams& p) {
  AcquisitionParams out = p;
  if (out.incumbents.size() == m.num_objectives())
    out.incumbents = standardize_values(m, out.incumbents);
  return out;
}

AcquisitionKind parse_acquisition(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "ei") return AcquisitionKind::EI;
  if (s == "pi") return AcquisitionKind::PI;
  if (s == "ucb") return AcquisitionKind::UCB;
  if (s == "smc") return AcquisitionKind::SMC;
  throw std::invalid_argument("unknown acquisition: " + name);
}

std::string acquisition_name(AcquisitionKind kind) {
  switch (kind) {
    case AcquisitionKind::EI: return "ei";
    case AcquisitionKind::PI: return "pi";
    case AcquisitionKind::UCB: return "ucb";
    case AcquisitionKind::SMC: return "smc";
  }
  throw std::invalid_argument("unknown acquisition kind");
}

void AcquisitionParams::validate(int num_objectives, AcquisitionKind kind) const {
  if (!(ucb_kappa > 0.0)) throw std::invalid_argument("acquisition: kappa must be > 0");
  if (pi_ei_xi < 0.0) throw std::invalid_argument("acquisition: xi must be >= 0");
  if ((kind == AcquisitionKind::EI || kind == AcquisitionKind::PI) &&
      incumbents.size() != num_objectives)
    throw std::invalid_argument("acquisition: incumbents length must equal objective count");
}

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

Eigen::VectorXd acq_ei(const GpModel& m, const MixedVector& w, const AcquisitionParams& p) {
  p.validate(m.num_objectives(), AcquisitionKind::EI);
  auto [mu, var] = gp_predict(m, w);
  return ei_from_posterior(standardize_values(m, mu), std::sqrt(var), standardize_incumbents(m, p));
}

Eigen::VectorXd acq_pi(const GpModel& m, const MixedVector& w, const AcquisitionParams& p) {
  p.validate(m.num_objectives(), AcquisitionKind::PI);
  auto [mu, var] = gp_predict(m, w);
  return pi_from_posterior(standardize_values(m, mu), std::sqrt(var), standardize_incumbents(m, p));
}

Eigen::VectorXd acq_ucb(const GpModel& m, const MixedVector& w, const AcquisitionParams& p) {
  p.validate(m.num_objectives(), AcquisitionKind::UCB);
  auto [mu, var] = gp_predict(m, w);
  return standardize_values(m, mu).array() + p.ucb_kappa * std::sqrt(var);
}

Eigen::VectorXd acq_smc(const GpModel& m, const MixedVector& w, Rng& rng) {
  auto [mu, var] = gp_predict(m, w);
  const double r = rng.uniform(0.0, 2.0 * std::sqrt(var));
  return standardize_values(m, mu).array() + r;
}

Eigen::VectorXd score_posterior(AcquisitionKind kind, const Eigen::VectorXd& mu, double sigma,
                                const AcquisitionParams& p, double unit) {
  switch (kind) {
    case AcquisitionKind::EI: return ei_from_posterior(mu, sigma, p);
    case AcquisitionKind::PI: return pi_from_posterior(mu, sigma, p);
    case AcquisitionKind::UCB: return mu.array() + p.ucb_kappa * sigma;
    case AcquisitionKind::SMC: return mu.array() + 2.0 * sigma * unit;
  }
  throw std::invalid_argument("unknown acquisition kind");
}

Eigen::MatrixXd evaluate_acquisition_batch(const GpModel& m, AcquisitionKind kind,
                                           const AcquisitionParams& p,
                                           const std::vector<MixedVector>& ws, Rng& rng) {
  p.validate(m.num_objectives(), kind);
  const AcquisitionParams ps = standardize_incumbents(m, p);
  auto [means, vars] = gp_predict_batch(m, ws);
  const int q = static_cast<int>(ws.size());
  Eigen::MatrixXd out(m.num_objectives(), q);
  for (int j = 0; j < q; ++j) {
    const double unit = kind == AcquisitionKind::SMC ? rng.uniform() : 0.0;
    out.col(j) = score_posterior(kind, standardize_values(m, means.col(j)), std::sqrt(vars[j]),
                                 ps, unit);
  }
  return out;
}

}  // namespace mixmobo
