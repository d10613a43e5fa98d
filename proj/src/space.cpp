#include "mixmobo/space.hpp"

#include <cmath>
#include <stdexcept>

namespace mixmobo {

void MixedSpace::validate() const {
  if (dims() < 1) throw std::invalid_argument("space: total dimension must be >= 1");
  for (const auto& [lo, hi] : continuous) {
    if (!(lo < hi)) throw std::invalid_argument("space: continuous lower must be < upper");
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw std::invalid_argument("space: continuous bounds must be finite");
  }
  for (const auto& levels : ordinal) {
    if (levels.size() < 2) throw std::invalid_argument("space: ordinal needs >= 2 levels");
    for (std::size_t i = 1; i < levels.size(); ++i)
      if (!(levels[i - 1] < levels[i]))
        throw std::invalid_argument("space: ordinal levels must be strictly increasing");
  }
  for (int c : categorical)
    if (c < 2) throw std::invalid_argument("space: categorical cardinality must be >= 2");
}

bool operator==(const MixedVector& a, const MixedVector& b) {
  return a.continuous.size() == b.continuous.size() && a.ordinal.size() == b.ordinal.size() &&
         a.categorical.size() == b.categorical.size() &&
         (a.continuous.array() == b.continuous.array()).all() &&
         (a.ordinal.array() == b.ordinal.array()).all() &&
         (a.categorical.array() == b.categorical.array()).all();
}

bool validate_point(const MixedVector& w, const MixedSpace& s) {
  if (w.continuous.size() != s.num_continuous() || w.ordinal.size() != s.num_ordinal() ||
      w.categorical.size() != s.num_categorical())
    return false;
  for (int i = 0; i < s.num_continuous(); ++i) {
    const auto& [lo, hi] = s.continuous[i];
    if (!(w.continuous[i] >= lo && w.continuous[i] <= hi)) return false;
  }
  for (int i = 0; i < s.num_ordinal(); ++i)
    if (w.ordinal[i] < 0 || w.ordinal[i] >= static_cast<int>(s.ordinal[i].size())) return false;
  for (int i = 0; i < s.num_categorical(); ++i)
    if (w.categorical[i] < 0 || w.categorical[i] >= s.categorical[i]) return false;
  return true;
}

MixedVector sample_uniform(const MixedSpace& s, Rng& rng) {
  MixedVector w;
  w.continuous.resize(s.num_continuous());
  w.ordinal.resize(s.num_ordinal());
  w.categorical.resize(s.num_categorical());
  for (int i = 0; i < s.num_continuous(); ++i)
    w.continuous[i] = rng.uniform(s.continuous[i].first, s.continuous[i].second);
  for (int i = 0; i < s.num_ordinal(); ++i)
    w.ordinal[i] = static_cast<int>(rng.uniform_int(s.ordinal[i].size()));
  for (int i = 0; i < s.num_categorical(); ++i)
    w.categorical[i] = static_cast<int>(rng.uniform_int(s.categorical[i]));
  return w;
}

MixedVector mutate_point(const MixedVector& w, const MixedSpace& s, double beta, Rng& rng) {
  MixedVector out = w;
  for (int i = 0; i < s.num_continuous(); ++i)
    if (rng.uniform() < beta)
      out.continuous[i] = rng.uniform(s.continuous[i].first, s.continuous[i].second);
  for (int i = 0; i < s.num_ordinal(); ++i)
    if (rng.uniform() < beta) out.ordinal[i] = static_cast<int>(rng.uniform_int(s.ordinal[i].size()));
  for (int i = 0; i < s.num_categorical(); ++i)
    if (rng.uniform() < beta) out.categorical[i] = static_cast<int>(rng.uniform_int(s.categorical[i]));
  return out;
}

Eigen::VectorXd mixed_distance_vector(const MixedVector& a, const MixedVector& b,
                                      const MixedSpace& s) {
  Eigen::VectorXd d(s.dims());
  int k = 0;
  for (int i = 0; i < s.num_continuous(); ++i, ++k) {
    const auto& [lo, hi] = s.continuous[i];
    d[k] = std::abs(a.continuous[i] - b.continuous[i]) / (hi - lo);
  }
  for (int i = 0; i < s.num_ordinal(); ++i, ++k) {
    const auto& levels = s.ordinal[i];
    const double range = levels.back() - levels.front();
    d[k] = std::abs(levels[a.ordinal[i]] - levels[b.ordinal[i]]) / range;
  }
  for (int i = 0; i < s.num_categorical(); ++i, ++k)
    d[k] = a.categorical[i] == b.categorical[i] ? 0.0 : 1.0;
  return d;
}

double l2_distance(const MixedVector& a, const MixedVector& b, const MixedSpace& s) {
  return mixed_distance_vector(a, b, s).norm();
}

void to_json(nlohmann::json& j, const MixedSpace& s) {
  auto cont = nlohmann::json::array();
  for (const auto& [lo, hi] : s.continuous) cont.push_back({lo, hi});
  j = nlohmann::json{{"continuous", cont}, {"ordinal", s.ordinal}, {"categorical", s.categorical}};
}

void from_json(const nlohmann::json& j, MixedSpace& s) {
  s = MixedSpace{};
  if (j.contains("continuous"))
    for (const auto& b : j.at("continuous"))
      s.continuous.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
  if (j.contains("ordinal")) s.ordinal = j.at("ordinal").get<std::vector<std::vector<double>>>();
  if (j.contains("categorical")) s.categorical = j.at("categorical").get<std::vector<int>>();
  s.validate();
}

void to_json(nlohmann::json& j, const MixedVector& w) {
  j = nlohmann::json{
      {"continuous", std::vector<double>(w.continuous.begin(), w.continuous.end())},
      {"ordinal", std::vector<int>(w.ordinal.begin(), w.ordinal.end())},
      {"categorical", std::vector<int>(w.categorical.begin(), w.categorical.end())}};
}

void from_json(const nlohmann::json& j, MixedVector& w) {
  const auto c = j.at("continuous").get<std::vector<double>>();
  const auto o = j.at("ordinal").get<std::vector<int>>();
  const auto z = j.at("categorical").get<std::vector<int>>();
  w.continuous = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  w.ordinal = Eigen::Map<const Eigen::VectorXi>(o.data(), static_cast<Eigen::Index>(o.size()));
  w.categorical = Eigen::Map<const Eigen::VectorXi>(z.data(), static_cast<Eigen::Index>(z.size()));
}

}  // namespace mixmobo
