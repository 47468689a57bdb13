#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "thetaframe/hierarchy.hpp"
#include "thetaframe/linalg.hpp"
#include "thetaframe/sequence.hpp"

namespace thetaframe {

/// One block of a block-repetition frame: e_j repeated with scalars t.
struct Block {
  std::size_t multiplicity = 0;
  std::vector<double> t;

  friend bool operator==(const Block&, const Block&) = default;
};

class GeneralFrameSpec;

/// Block-repetition frame over an orthonormal basis: functional i in block j
/// acts as g_i(f) = t_i <f, e_j>_0. Indices are zero-based; block j covers
/// functionals [endpoint(j), endpoint(j+1)).
class BlockFrameSpec {
 public:
  /// Throws std::invalid_argument on an empty block, a size mismatch between
  /// multiplicity and t, or a zero / non-finite scalar.
  explicit BlockFrameSpec(std::vector<Block> blocks);

  std::size_t dimension() const { return blocks_.size(); }
  std::size_t functional_count() const { return block_of_.size(); }

  std::size_t block_of(std::size_t i) const;
  double scalar(std::size_t i) const;
  /// Cumulative endpoints k_0 = 0, k_1, ..., k_J.
  const std::vector<std::size_t>& endpoints() const { return endpoints_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Row i equals t_i e_{block_of(i)}.
  GeneralFrameSpec as_matrix() const;

  friend bool operator==(const BlockFrameSpec& a, const BlockFrameSpec& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<std::size_t> endpoints_;
  std::vector<std::size_t> block_of_;
  std::vector<double> scalars_;
};

/// Arbitrary finite functional sequence on Euclidean R^n: row i is the Riesz
/// representer of g_i with respect to the level-0 inner product.
class GeneralFrameSpec {
 public:
  /// Throws std::invalid_argument on a zero row, a non-finite entry or an empty matrix.
  explicit GeneralFrameSpec(Matrix rows);

  std::size_t dimension() const { return rows_.cols(); }
  std::size_t functional_count() const { return rows_.rows(); }
  const Matrix& matrix() const { return rows_; }
  std::span<const double> row(std::size_t i) const { return rows_.row(i); }

  friend bool operator==(const GeneralFrameSpec&, const GeneralFrameSpec&) = default;

 private:
  Matrix rows_;
};

using Frame = std::variant<BlockFrameSpec, GeneralFrameSpec>;

std::size_t dimension(const Frame& frame);
std::size_t functional_count(const Frame& frame);
GeneralFrameSpec as_matrix(const Frame& frame);

BlockFrameSpec build_block_frame(std::vector<Block> blocks);

/// {e_1, e_1, 2e_2, 3e_3, ..., J e_J}; needs J >= 2.
BlockFrameSpec example_g1(std::size_t dimension);
/// {e_1, e_2, e_1, e_3, ..., e_1, e_J}, 2(J-1) rows; needs J >= 2.
GeneralFrameSpec example_g2(std::size_t dimension);

/// {g_i(f)}. The pairing is the level-0 one, so the sequence does not depend on the level.
ScalarSequence analysis(const Frame& frame, std::span<const double> f);
/// Same sequence; additionally validates the level and the hierarchy dimension.
ScalarSequence analysis(const Frame& frame, std::span<const double> f, const WeightHierarchy& h, std::size_t s);

/// Dual norm of g_i restricted to X_s: |t_i| / a[s][block_of(i)] for block
/// frames, ||W_s^{-1} row_i||_2 in general.
double functional_dual_norm(const Frame& frame, std::size_t i, const WeightHierarchy& h, std::size_t s);

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
};

/// Optimal A, B with A||f||_s^2 <= sum |g_i(f)|^2 <= B||f||_s^2: extremal
/// eigenvalues of (G W_s^{-1})^T (G W_s^{-1}).
FrameBounds l2_frame_bounds(const Frame& frame, const WeightHierarchy& h, std::size_t s);

/// Throws unless the hierarchy dimension equals the frame dimension.
void check_compatible(const Frame& frame, const WeightHierarchy& h);

}  // namespace thetaframe
