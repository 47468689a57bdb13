#include "thetaframe/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace thetaframe {

ScalarSequence::ScalarSequence(std::vector<double> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i])) {
      throw std::invalid_argument("sequence entry " + std::to_string(i) + " is not finite");
    }
  }
  while (!entries_.empty() && entries_.back() == 0.0) entries_.pop_back();
}

ScalarSequence::ScalarSequence(std::initializer_list<double> entries)
    : ScalarSequence(std::vector<double>(entries)) {}

Vector ScalarSequence::padded(std::size_t n) const {
  Vector out(n, 0.0);
  std::copy_n(entries_.begin(), std::min(n, entries_.size()), out.begin());
  return out;
}

ScalarSequence operator+(const ScalarSequence& c, const ScalarSequence& d) {
  const std::size_t n = std::max(c.size(), d.size());
  std::vector<double> sum(n);
  for (std::size_t i = 0; i < n; ++i) sum[i] = c[i] + d[i];
  return ScalarSequence(std::move(sum));
}

ScalarSequence operator*(double lambda, const ScalarSequence& c) {
  std::vector<double> out(c.entries().begin(), c.entries().end());
  for (double& x : out) x *= lambda;
  return ScalarSequence(std::move(out));
}

LpExponent::LpExponent(double p) : p_(p), sup_(false) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("lp exponent must be a finite real >= 1 (use LpExponent::sup())");
  }
}

LpExponent LpExponent::sup() { return LpExponent(); }

double lp_norm(const ScalarSequence& c, LpExponent p) {
  const auto xs = c.entries();
  if (p.is_sup()) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
  }
  if (p.value() == 2.0) {
    // hypot-style scaling avoids overflow on large entries
    double scale = 0.0;
    for (double x : xs) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x / scale) * (x / scale);
    return scale * std::sqrt(s);
  }
  double s = 0.0;
  for (double x : xs) s += std::pow(std::abs(x), p.value());
  return std::pow(s, 1.0 / p.value());
}

ScalarSequence tail(const ScalarSequence& c, std::size_t n) {
  std::vector<double> out(c.entries().begin(), c.entries().end());
  std::fill_n(out.begin(), std::min(n, out.size()), 0.0);
  return ScalarSequence(std::move(out));
}

ScalarSequence canonical_vector(std::size_t i) {
  std::vector<double> out(i + 1, 0.0);
  out[i] = 1.0;
  return ScalarSequence(std::move(out));
}

bool solid_dominates(const ScalarSequence& c, const ScalarSequence& d) {
  const std::size_t n = std::max(c.size(), d.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(d[i]) > std::abs(c[i])) return false;
  }
  return true;
}

}  // namespace thetaframe
