#include "thetaframe/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "thetaframe/theta.hpp"

namespace thetaframe {

namespace {

constexpr double kIdentityTolerance = 1e-12;

void check_reconstructs(const Frame& frame, const std::vector<Vector>& vectors) {
  const std::size_t n = dimension(frame);
  if (vectors.size() != functional_count(frame)) {
    throw std::invalid_argument("dual has " + std::to_string(vectors.size()) + " vectors for " +
                                std::to_string(functional_count(frame)) + " functionals");
  }
  for (std::size_t l = 0; l < n; ++l) {
    Vector e(n, 0.0);
    e[l] = 1.0;
    const ScalarSequence coeff = analysis(frame, e);
    Vector sum(n, 0.0);
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) sum[j] += coeff[i] * vectors[i][j];
    sum[l] -= 1.0;
    if (norm2(sum) > kIdentityTolerance) {
      throw std::invalid_argument("dual does not reconstruct basis vector " + std::to_string(l));
    }
  }
}

}  // namespace

DualFamily::DualFamily(std::size_t dimension, std::vector<Vector> vectors, std::optional<std::vector<Vector>> witnesses)
    : dimension_(dimension), vectors_(std::move(vectors)), witnesses_(std::move(witnesses)) {
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != dimension_) {
      throw std::invalid_argument("dual vector " + std::to_string(i) + " has wrong dimension");
    }
    for (double x : vectors_[i])
      if (!std::isfinite(x)) throw std::invalid_argument("dual vector " + std::to_string(i) + " is not finite");
  }
  if (witnesses_ && witnesses_->size() != vectors_.size()) {
    throw std::invalid_argument("witness family size differs from dual size");
  }
}

std::vector<SparseEntry> DualFamily::sparse() const {
  std::vector<SparseEntry> out;
  for (std::size_t i = 0; i < vectors_.size(); ++i)
    for (std::size_t j = 0; j < dimension_; ++j)
      if (vectors_[i][j] != 0.0) out.push_back({i, j, vectors_[i][j]});
  return out;
}

DualFamily DualFamily::from_sparse(std::size_t dimension, std::size_t count, std::span<const SparseEntry> entries) {
  std::vector<Vector> vectors(count, Vector(dimension, 0.0));
  for (const auto& e : entries) {
    if (e.i >= count || e.j >= dimension) {
      throw std::out_of_range("dual entry (" + std::to_string(e.i) + ", " + std::to_string(e.j) + ") out of range");
    }
    vectors[e.i][e.j] = e.value;
  }
  return DualFamily(dimension, std::move(vectors));
}

DualFamily build_dual(const BlockFrameSpec& frame) {
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.functional_count();
  std::vector<Vector> f(m, Vector(n, 0.0));
  std::vector<Vector> h(m, Vector(n, 0.0));
  const auto& k = frame.endpoints();
  for (std::size_t j = 0; j < n; ++j) f[k[j]][j] = 1.0 / frame.scalar(k[j]);
  for (std::size_t i = 0; i < m; ++i) {
    // 1/t rounded up in magnitude until |t * h| >= 1 holds in floating point.
    const double t = frame.scalar(i);
    double mag = 1.0 / std::abs(t);
    while (std::abs(t) * mag < 1.0) mag = std::nextafter(mag, INFINITY);
    h[i][frame.block_of(i)] = std::copysign(mag, t);
  }

  check_reconstructs(frame, f);
  const auto flat = WeightHierarchy::trivial(n);
  for (std::size_t i = 0; i < m; ++i) {
    const ScalarSequence z = canonical_vector(i);
    const double expected = canonical_vector_norm(frame, i, flat, 0);
    if (!member_Mc(frame, z, h[i]) || std::abs(norm2(h[i]) - expected) > 1e-12 * expected) {
      throw std::logic_error("witness h_" + std::to_string(i) + " does not attain the canonical-vector norm");
    }
  }
  return DualFamily(n, std::move(f), std::move(h));
}

DualFamily make_dual(const Frame& frame, std::vector<Vector> vectors) {
  for (const auto& v : vectors) {
    if (v.size() != dimension(frame)) throw std::invalid_argument("dual vector has wrong dimension");
  }
  check_reconstructs(frame, vectors);
  return DualFamily(dimension(frame), std::move(vectors));
}

DualFamily example_g2_dual(std::size_t dimension) {
  const auto frame = example_g2(dimension);
  std::vector<Vector> f(frame.functional_count(), Vector(dimension, 0.0));
  f[0][0] = 1.0;
  for (std::size_t i = 1; i < f.size(); i += 2) f[i][(i + 1) / 2] = 1.0;
  return make_dual(frame, std::move(f));
}

Synthesis apply_v(const DualFamily& dual, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s) {
  if (c.size() > dual.count()) throw std::invalid_argument("sequence longer than the dual family");
  if (h.dimension() != dual.dimension()) throw std::invalid_argument("hierarchy dimension differs from dual");
  h.check_level(s);
  Synthesis out;
  out.value.assign(dual.dimension(), 0.0);
  out.partial_norms.reserve(dual.count());
  for (std::size_t i = 0; i < dual.count(); ++i) {
    const double ci = c[i];
    if (ci != 0.0) {
      const auto& fi = dual.vector(i);
      for (std::size_t j = 0; j < fi.size(); ++j) out.value[j] += ci * fi[j];
    }
    out.partial_norms.push_back(level_norm(h, out.value, s));
  }
  return out;
}

std::vector<VLevelCertificate> v_norm_certificate(const BlockFrameSpec& frame, const DualFamily& dual,
                                                  const WeightHierarchy& h, std::size_t samples, std::uint64_t seed) {
  check_compatible(frame, h);
  if (dual.count() != frame.functional_count()) throw std::invalid_argument("dual size differs from frame");
  const auto& k = frame.endpoints();
  std::vector<VLevelCertificate> out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  for (std::size_t s = 0; s <= h.top_level(); ++s) {
    VLevelCertificate cert;
    cert.level = s;
    for (std::size_t i = 0; i < frame.functional_count(); ++i) {
      DualNormCheck check;
      check.i = i;
      check.dual_vector_norm = level_norm(h, dual.vector(i), s);
      check.canonical_norm = canonical_vector_norm(frame, i, h, s);
      check.opens_block = std::find(k.begin(), k.end() - 1, i) != k.end() - 1;
      const double tol = 1e-12 * check.canonical_norm;
      check.ok = check.opens_block ? std::abs(check.dual_vector_norm - check.canonical_norm) <= tol
                                   : check.dual_vector_norm == 0.0;
      cert.per_index_ok = cert.per_index_ok && check.ok;
      cert.checks.push_back(check);
    }
    std::vector<double> c(frame.functional_count());
    for (std::size_t n = 0; n < samples; ++n) {
      for (double& x : c) x = normal(rng);
      const ScalarSequence seq(c);
      const double theta = theta_norm(frame, seq, h, s, NormMethod::closed_form).value;
      if (theta == 0.0) continue;
      const double image = level_norm(h, apply_v(dual, seq, h, s).value, s);
      cert.k_estimate = std::max(cert.k_estimate, image / theta);
    }
    cert.bounded_ok = cert.k_estimate <= 1.0 + 1e-9;
    out.push_back(std::move(cert));
  }
  return out;
}

double expansion_residual(const Frame& frame, const DualFamily& dual, std::span<const double> f,
                          const WeightHierarchy& h, std::size_t s) {
  check_compatible(frame, h);
  Vector diff = apply_v(dual, analysis(frame, f), h, s).value;
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= f[j];
  return level_norm(h, diff, s);
}

double theta_f_norm(const DualFamily& dual, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s) {
  const auto synthesis = apply_v(dual, c, h, s);
  double sup = 0.0;
  for (double x : synthesis.partial_norms) sup = std::max(sup, x);
  return sup;
}

}  // namespace thetaframe
