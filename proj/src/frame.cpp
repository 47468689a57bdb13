#include "thetaframe/frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace thetaframe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_index(std::size_t i, std::size_t m) {
  if (i >= m) throw std::out_of_range("functional index " + std::to_string(i) + " out of range 0.." + std::to_string(m));
}

}  // namespace

BlockFrameSpec::BlockFrameSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("block frame needs at least one block");
  endpoints_.push_back(0);
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const Block& b = blocks_[j];
    if (b.multiplicity == 0) throw std::invalid_argument("block " + std::to_string(j) + " is empty");
    if (b.t.size() != b.multiplicity) {
      throw std::invalid_argument("block " + std::to_string(j) + " has multiplicity " + std::to_string(b.multiplicity) +
                                  " but " + std::to_string(b.t.size()) + " scalars");
    }
    for (double t : b.t) {
      if (!std::isfinite(t) || t == 0.0) {
        throw std::invalid_argument("block " + std::to_string(j) + " has a zero or non-finite scalar");
      }
      block_of_.push_back(j);
      scalars_.push_back(t);
    }
    endpoints_.push_back(block_of_.size());
  }
}

std::size_t BlockFrameSpec::block_of(std::size_t i) const {
  check_index(i, functional_count());
  return block_of_[i];
}

double BlockFrameSpec::scalar(std::size_t i) const {
  check_index(i, functional_count());
  return scalars_[i];
}

GeneralFrameSpec BlockFrameSpec::as_matrix() const {
  Matrix g(functional_count(), dimension());
  for (std::size_t i = 0; i < functional_count(); ++i) g(i, block_of_[i]) = scalars_[i];
  return GeneralFrameSpec(std::move(g));
}

GeneralFrameSpec::GeneralFrameSpec(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.cols() == 0) throw std::invalid_argument("frame matrix is empty");
  for (std::size_t i = 0; i < rows_.rows(); ++i) {
    bool nonzero = false;
    for (double x : rows_.row(i)) {
      if (!std::isfinite(x)) throw std::invalid_argument("frame matrix row " + std::to_string(i) + " is not finite");
      nonzero = nonzero || x != 0.0;
    }
    if (!nonzero) throw std::invalid_argument("frame matrix row " + std::to_string(i) + " is zero");
  }
}

std::size_t dimension(const Frame& frame) {
  return std::visit([](const auto& f) { return f.dimension(); }, frame);
}

std::size_t functional_count(const Frame& frame) {
  return std::visit([](const auto& f) { return f.functional_count(); }, frame);
}

GeneralFrameSpec as_matrix(const Frame& frame) {
  return std::visit(overloaded{[](const BlockFrameSpec& b) { return b.as_matrix(); },
                               [](const GeneralFrameSpec& g) { return g; }},
                    frame);
}

BlockFrameSpec build_block_frame(std::vector<Block> blocks) { return BlockFrameSpec(std::move(blocks)); }

BlockFrameSpec example_g1(std::size_t dimension) {
  if (dimension < 2) throw std::invalid_argument("example frames need dimension >= 2");
  std::vector<Block> blocks{{2, {1.0, 1.0}}};
  for (std::size_t j = 2; j <= dimension; ++j) blocks.push_back({1, {static_cast<double>(j)}});
  return BlockFrameSpec(std::move(blocks));
}

GeneralFrameSpec example_g2(std::size_t dimension) {
  if (dimension < 2) throw std::invalid_argument("example frames need dimension >= 2");
  const std::size_t m = 2 * (dimension - 1);
  Matrix g(m, dimension);
  for (std::size_t i = 0; i < m; ++i) {
    // zero-based even rows are e_1, odd row 2q-1 is e_{q+1}
    const std::size_t j = (i % 2 == 0) ? 0 : (i + 1) / 2;
    g(i, j) = 1.0;
  }
  return GeneralFrameSpec(std::move(g));
}

ScalarSequence analysis(const Frame& frame, std::span<const double> f) {
  if (f.size() != dimension(frame)) {
    throw std::invalid_argument("vector of length " + std::to_string(f.size()) + " for frame of dimension " +
                                std::to_string(dimension(frame)));
  }
  return std::visit(overloaded{[&](const BlockFrameSpec& b) {
                                 std::vector<double> out(b.functional_count());
                                 for (std::size_t i = 0; i < out.size(); ++i) out[i] = b.scalar(i) * f[b.block_of(i)];
                                 return ScalarSequence(std::move(out));
                               },
                               [&](const GeneralFrameSpec& g) { return ScalarSequence(g.matrix().multiply(f)); }},
                    frame);
}

ScalarSequence analysis(const Frame& frame, std::span<const double> f, const WeightHierarchy& h, std::size_t s) {
  check_compatible(frame, h);
  h.check_level(s);
  return analysis(frame, f);
}

double functional_dual_norm(const Frame& frame, std::size_t i, const WeightHierarchy& h, std::size_t s) {
  check_compatible(frame, h);
  check_index(i, functional_count(frame));
  const auto a = h.weights(s);
  return std::visit(overloaded{[&](const BlockFrameSpec& b) { return std::abs(b.scalar(i)) / a[b.block_of(i)]; },
                               [&](const GeneralFrameSpec& g) {
                                 Vector scaled(g.row(i).begin(), g.row(i).end());
                                 for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] /= a[j];
                                 return norm2(scaled);
                               }},
                    frame);
}

FrameBounds l2_frame_bounds(const Frame& frame, const WeightHierarchy& h, std::size_t s) {
  check_compatible(frame, h);
  const auto a = h.weights(s);
  Matrix g = as_matrix(frame).matrix();
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t j = 0; j < g.cols(); ++j) g(r, j) /= a[j];
  const auto eig = symmetric_eigenvalues(g.gram());
  // Gram matrices are PSD; clip rounding noise below zero
  return {std::max(0.0, eig.front()), std::max(0.0, eig.back())};
}

void check_compatible(const Frame& frame, const WeightHierarchy& h) {
  if (h.dimension() != dimension(frame)) {
    throw std::invalid_argument("hierarchy dimension " + std::to_string(h.dimension()) +
                                " does not match frame dimension " + std::to_string(dimension(frame)));
  }
}

}  // namespace thetaframe
