#include "thetaframe/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace thetaframe {

WeightHierarchy::WeightHierarchy(std::vector<std::vector<double>> weights) : weights_(std::move(weights)) {
  if (weights_.empty() || weights_.front().empty()) {
    throw std::invalid_argument("hierarchy needs at least one level and one basis index");
  }
  const std::size_t dim = weights_.front().size();
  for (std::size_t s = 0; s < weights_.size(); ++s) {
    const auto& level = weights_[s];
    if (level.size() != dim) {
      throw std::invalid_argument("hierarchy level " + std::to_string(s) + " has " + std::to_string(level.size()) +
                                  " weights, expected " + std::to_string(dim));
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const double a = level[j];
      const std::string where = "weight[" + std::to_string(s) + "][" + std::to_string(j) + "]";
      if (!std::isfinite(a)) throw std::invalid_argument(where + " is not finite");
      if (s == 0 && a != 1.0) throw std::invalid_argument(where + " must be 1 at level 0");
      if (a < 1.0) throw std::invalid_argument(where + " is below 1");
      if (s > 0 && a < weights_[s - 1][j]) throw std::invalid_argument(where + " decreases from the previous level");
    }
  }
}

WeightHierarchy WeightHierarchy::trivial(std::size_t dimension, std::size_t top_level) {
  return WeightHierarchy(std::vector<std::vector<double>>(top_level + 1, std::vector<double>(dimension, 1.0)));
}

WeightHierarchy WeightHierarchy::polynomial(std::size_t dimension, std::size_t top_level) {
  std::vector<std::vector<double>> w(top_level + 1, std::vector<double>(dimension));
  for (std::size_t s = 0; s <= top_level; ++s)
    for (std::size_t j = 0; j < dimension; ++j)
      w[s][j] = std::pow(static_cast<double>(j + 2), static_cast<double>(s));
  return WeightHierarchy(std::move(w));
}

std::span<const double> WeightHierarchy::weights(std::size_t s) const {
  check_level(s);
  return weights_[s];
}

void WeightHierarchy::check_level(std::size_t s) const {
  if (s > top_level()) {
    throw std::out_of_range("level " + std::to_string(s) + " outside hierarchy 0.." + std::to_string(top_level()));
  }
}

void WeightHierarchy::check_vector(std::span<const double> f) const {
  if (f.size() != dimension()) {
    throw std::invalid_argument("vector of length " + std::to_string(f.size()) + " in hierarchy of dimension " +
                                std::to_string(dimension()));
  }
}

double level_inner(const WeightHierarchy& h, std::span<const double> f, std::span<const double> g, std::size_t s) {
  h.check_vector(f);
  h.check_vector(g);
  const auto a = h.weights(s);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += a[j] * a[j] * f[j] * g[j];
  return sum;
}

double level_norm(const WeightHierarchy& h, std::span<const double> f, std::size_t s) {
  h.check_vector(f);
  const auto a = h.weights(s);
  double scale = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) scale = std::max(scale, std::abs(a[j] * f[j]));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = a[j] * f[j] / scale;
    sum += x * x;
  }
  return scale * std::sqrt(sum);
}

std::vector<Vector> rescaled_basis(const WeightHierarchy& h, std::size_t s) {
  const auto a = h.weights(s);
  std::vector<Vector> basis(a.size(), Vector(a.size(), 0.0));
  for (std::size_t j = 0; j < a.size(); ++j) basis[j][j] = 1.0 / a[j];
  return basis;
}

AxiomReport verify_axioms(const WeightHierarchy& h, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector f(h.dimension());
  for (std::size_t n = 0; n < samples; ++n) {
    for (double& x : f) x = normal(rng);
    for (std::size_t s = 0; s < h.top_level(); ++s) {
      const double lo = level_norm(h, f, s);
      const double hi = level_norm(h, f, s + 1);
      if (hi > 0.0) report.worst_ratio = std::max(report.worst_ratio, lo / hi);
      if (lo > hi) report.norm_monotone = false;
    }
  }
  return report;
}

}  // namespace thetaframe
