#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "thetaframe/frame.hpp"
#include "thetaframe/hierarchy.hpp"
#include "thetaframe/sequence.hpp"

namespace thetaframe {

/// One nonzero coordinate of a dual vector: f_i has value at basis index j.
struct SparseEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Dual sequence {f_i} with sum_i g_i(f) f_i = f, plus, for block frames, the
/// canonical-vector witnesses h_i ∈ M^{z_i}.
class DualFamily {
 public:
  DualFamily(std::size_t dimension, std::vector<Vector> vectors, std::optional<std::vector<Vector>> witnesses = {});

  std::size_t dimension() const { return dimension_; }
  std::size_t count() const { return vectors_.size(); }
  const Vector& vector(std::size_t i) const { return vectors_.at(i); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const std::optional<std::vector<Vector>>& witnesses() const { return witnesses_; }

  std::vector<SparseEntry> sparse() const;
  static DualFamily from_sparse(std::size_t dimension, std::size_t count, std::span<const SparseEntry> entries);

 private:
  std::size_t dimension_;
  std::vector<Vector> vectors_;
  std::optional<std::vector<Vector>> witnesses_;
};

/// f_{k_j} = e_j / t_{k_j} at the first index of each block, zero elsewhere;
/// h_i = e_{block_of(i)} / t_i. Both invariants are verified before returning.
DualFamily build_dual(const BlockFrameSpec& frame);

/// Validates a hand-constructed dual: throws std::invalid_argument unless
/// sum_i g_i(e_l) f_i = e_l for every basis vector (to 1e-12).
DualFamily make_dual(const Frame& frame, std::vector<Vector> vectors);

/// Dual of {e_1, e_2, e_1, e_3, ...}: {e_1, e_2, 0, e_3, 0, e_4, ...}.
DualFamily example_g2_dual(std::size_t dimension);

struct Synthesis {
  Vector value;                      // sum_i c_i f_i
  std::vector<double> partial_norms; // ||sum_{i<=n} c_i f_i||_s, n = 1..count
};

Synthesis apply_v(const DualFamily& dual, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s);

struct DualNormCheck {
  std::size_t i = 0;
  double dual_vector_norm = 0.0;  // ||f_i||_s
  double canonical_norm = 0.0;    // norm of z_i at level s
  bool opens_block = false;
  bool ok = false;
};

struct VLevelCertificate {
  std::size_t level = 0;
  std::vector<DualNormCheck> checks;
  bool per_index_ok = true;
  /// max over sampled c of ||Vc||_s / norm_s(c).
  double k_estimate = 0.0;
  bool bounded_ok = true;
};

/// Checks ||f_i||_s <= norm_s(z_i) with equality at block-opening indices
/// and zero elsewhere, then estimates K_s from Gaussian sequences. For block
/// frames the certificate requires K_s <= 1 + 1e-9.
std::vector<VLevelCertificate> v_norm_certificate(const BlockFrameSpec& frame, const DualFamily& dual,
                                                  const WeightHierarchy& h, std::size_t samples = 200,
                                                  std::uint64_t seed = 0);

/// ||V(analysis(f)) - f||_s.
double expansion_residual(const Frame& frame, const DualFamily& dual, std::span<const double> f,
                          const WeightHierarchy& h, std::size_t s);

/// sup_n ||sum_{i<=n} c_i f_i||_s.
double theta_f_norm(const DualFamily& dual, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s);

}  // namespace thetaframe
