#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thetaframe/sequence.hpp"

namespace thetaframe {

/// Diagonal weighted Hilbert hierarchy X_0 ⊇ X_1 ⊇ ... ⊇ X_S over a truncated
/// orthonormal basis e_0..e_{J-1}.
///
/// Level s carries the norm ||f||_s^2 = sum_j a[s][j]^2 f_j^2. Level 0 is the
/// unweighted space; weights never decrease from one level to the next.
class WeightHierarchy {
 public:
  /// weights[s][j]; throws std::invalid_argument unless a[0][j] = 1 and
  /// 1 <= a[s][j] <= a[s+1][j].
  explicit WeightHierarchy(std::vector<std::vector<double>> weights);

  /// a[s][j] = 1 at every level.
  static WeightHierarchy trivial(std::size_t dimension, std::size_t top_level = 0);
  /// a[s][j] = (1 + j)^s with j counted from 1.
  static WeightHierarchy polynomial(std::size_t dimension, std::size_t top_level);

  std::size_t dimension() const { return weights_.front().size(); }
  std::size_t top_level() const { return weights_.size() - 1; }
  std::size_t level_count() const { return weights_.size(); }

  double weight(std::size_t s, std::size_t j) const { return weights(s)[j]; }
  std::span<const double> weights(std::size_t s) const;
  const std::vector<std::vector<double>>& table() const { return weights_; }

  /// Throws std::out_of_range when s > top_level().
  void check_level(std::size_t s) const;
  /// Throws std::invalid_argument when the vector length differs from dimension().
  void check_vector(std::span<const double> f) const;

 private:
  std::vector<std::vector<double>> weights_;
};

double level_norm(const WeightHierarchy& h, std::span<const double> f, std::size_t s);
double level_inner(const WeightHierarchy& h, std::span<const double> f, std::span<const double> g,
                   std::size_t s);

/// z_{j,s} = e_j / a[s][j], an orthonormal basis of X_s.
std::vector<Vector> rescaled_basis(const WeightHierarchy& h, std::size_t s);

struct AxiomReport {
  bool norm_monotone = true;
  std::size_t samples = 0;
  double worst_ratio = 0.0;  // max over samples and s of ||f||_s / ||f||_{s+1}
  std::string nesting = "trivial at truncation";
  std::string density = "trivial at truncation";
};

/// Samples Gaussian vectors and checks ||f||_s <= ||f||_{s+1}. Nesting of the
/// spaces and density of their intersection are vacuous in finite dimension
/// and only labelled as such.
AxiomReport verify_axioms(const WeightHierarchy& h, std::size_t samples = 200, std::uint64_t seed = 0);

}  // namespace thetaframe
