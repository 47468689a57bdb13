#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace thetaframe {

using Vector = std::vector<double>;

/// Finitely supported real sequence with an implicit zero tail.
///
/// Trailing zeros are dropped on construction, so two sequences that differ
/// only in trailing zeros are equal. Entries must be finite.
class ScalarSequence {
 public:
  ScalarSequence() = default;
  explicit ScalarSequence(std::vector<double> entries);
  ScalarSequence(std::initializer_list<double> entries);

  /// Length of the support prefix (index of the last nonzero entry + 1).
  std::size_t size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  /// i-th coordinate, zero beyond size().
  double operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0.0; }

  std::span<const double> entries() const { return entries_; }

  /// Coordinates 0..n-1, zero-padded.
  Vector padded(std::size_t n) const;

  friend bool operator==(const ScalarSequence&, const ScalarSequence&) = default;

 private:
  std::vector<double> entries_;
};

ScalarSequence operator+(const ScalarSequence& c, const ScalarSequence& d);
ScalarSequence operator*(double lambda, const ScalarSequence& c);

/// Exponent of an l^p norm: p >= 1 or the sup norm.
class LpExponent {
 public:
  explicit LpExponent(double p);
  static LpExponent sup();

  bool is_sup() const { return sup_; }
  double value() const { return p_; }

 private:
  LpExponent() = default;
  double p_ = 0.0;
  bool sup_ = true;
};

double lp_norm(const ScalarSequence& c, LpExponent p);

/// c^(n): the first n coordinates zeroed, the rest kept.
ScalarSequence tail(const ScalarSequence& c, std::size_t n);

/// Canonical vector z_i (zero-based i).
ScalarSequence canonical_vector(std::size_t i);

/// True iff |d_i| <= |c_i| for every i.
bool solid_dominates(const ScalarSequence& c, const ScalarSequence& d);

}  // namespace thetaframe
