#include "thetaframe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace thetaframe {

PolyhedronResult min_norm_polyhedron(const Matrix& a, std::span<const double> b, std::span<const double> weights,
                                     const DykstraOptions& options) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw std::invalid_argument("min_norm_polyhedron: b has wrong length");
  if (weights.size() != n) throw std::invalid_argument("min_norm_polyhedron: weights have wrong length");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("min_norm_polyhedron: weights must be positive");
  }

  // Work in u = W f, where the objective is Euclidean and row i becomes a_i W^{-1}.
  Matrix rows(m, n);
  std::vector<double> row_norm2(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) rows(i, j) = a(i, j) / weights[j];
    row_norm2[i] = dot(rows.row(i), rows.row(i));
  }

  auto residual_of = [&](const Vector& u) {
    double r = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double gap = b[i] - dot(rows.row(i), u);
      if (gap <= 0.0) continue;
      r = std::max(r, row_norm2[i] > 0.0 ? gap / std::sqrt(row_norm2[i]) : std::numeric_limits<double>::infinity());
    }
    return r;
  };

  PolyhedronResult result;
  double scale = 0.0;  // max distance from the origin to a half-space
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] > 0.0) scale = std::max(scale, b[i] / std::sqrt(row_norm2[i]));
  }
  if (scale == 0.0) {
    result.status = PolyhedronStatus::solved;
    result.point.assign(n, 0.0);
    return result;
  }

  // Weak duality: for lambda >= 0 and feasible u, lambda.b <= (A^T lambda).u.
  // The rounding guard keeps the bound valid when A^T lambda nearly cancels.
  auto dual_bound = [&](const std::vector<double>& lambda) {
    double num = 0.0;
    double mass = 0.0;
    Vector v(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (lambda[i] <= 0.0) continue;
      num += lambda[i] * b[i];
      mass += lambda[i] * std::sqrt(row_norm2[i]);
      for (std::size_t j = 0; j < n; ++j) v[j] += lambda[i] * rows(i, j);
    }
    if (num <= 0.0) return 0.0;
    return num / (norm2(v) + 8.0 * (n + m) * std::numeric_limits<double>::epsilon() * mass);
  };

  // Dykstra correction for half-space i is -nu_i * row_i with nu_i >= 0.
  Vector u(n, 0.0);
  std::vector<double> nu(m, 0.0);
  std::vector<double> nu_mark(m, 0.0);
  std::vector<double> growth(m, 0.0);
  Vector y(n);
  double window_residual = std::numeric_limits<double>::infinity();

  for (std::size_t cycle = 1; cycle <= options.max_iterations; ++cycle) {
    double moved = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = rows.row(i);
      for (std::size_t j = 0; j < n; ++j) y[j] = u[j] - nu[i] * r[j];
      const double gap = b[i] - dot(r, y);
      nu[i] = gap > 0.0 ? gap / row_norm2[i] : 0.0;
      double step2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double next = y[j] + nu[i] * r[j];
        step2 += (next - u[j]) * (next - u[j]);
        u[j] = next;
      }
      moved += std::sqrt(step2);
    }

    const double residual = residual_of(u);
    result.iterations = cycle;
    result.residual = residual;

    if (moved < options.step_tolerance) {
      result.status = residual <= options.feasibility_tolerance ? PolyhedronStatus::solved : PolyhedronStatus::infeasible;
      break;
    }
    if (cycle % options.certificate_interval == 0) {
      for (std::size_t i = 0; i < m; ++i) growth[i] = std::max(0.0, nu[i] - nu_mark[i]);
      nu_mark = nu;
      const double growth_bound = dual_bound(growth);
      result.lower_bound = std::max({result.lower_bound, dual_bound(nu), growth_bound});
      if (result.lower_bound > options.cutoff) {
        result.status = PolyhedronStatus::above_cutoff;
        return result;
      }
      if (residual > options.feasibility_tolerance && growth_bound > 1e10 * scale) {
        result.status = PolyhedronStatus::infeasible;
        return result;
      }
    }
    if (residual > options.feasibility_tolerance && cycle % options.stall_window == 0) {
      if (residual > 0.99 * window_residual) {
        result.status = PolyhedronStatus::infeasible;
        return result;
      }
      window_residual = residual;
    }
    if (cycle == options.max_iterations) {
      throw ConvergenceError("Dykstra projections did not converge within " + std::to_string(cycle) + " cycles");
    }
  }
  if (result.status == PolyhedronStatus::infeasible) return result;

  // Scale onto the feasible side; constraints with b_i > 0 are homogeneous in u.
  double lift = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double value = dot(rows.row(i), u);
    if (b[i] > 0.0 && value > 0.0) lift = std::max(lift, b[i] / value);
  }
  for (double& x : u) x *= lift;

  result.value = norm2(u);
  result.point.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.point[j] = u[j] / weights[j];
  return result;
}

ThetaNormResult oracle_theta_norm(const GeneralFrameSpec& frame, const ScalarSequence& c, const WeightHierarchy& h,
                                  std::size_t s, const OracleLimits& limits) {
  check_compatible(frame, h);
  h.check_level(s);
  check_within_truncation(frame, c);
  if (frame.functional_count() > limits.max_functionals) {
    throw OracleLimitError("oracle supports at most " + std::to_string(limits.max_functionals) + " functionals, got " +
                           std::to_string(frame.functional_count()));
  }
  if (frame.dimension() > limits.max_dimension) {
    throw OracleLimitError("oracle supports dimension at most " + std::to_string(limits.max_dimension) + ", got " +
                           std::to_string(frame.dimension()));
  }

  const std::size_t n = frame.dimension();
  ThetaNormResult best;
  best.method = NormMethod::oracle;
  best.level = s;
  best.witness.assign(n, 0.0);

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) active.push_back(i);
  if (active.empty()) return best;

  const auto weights = h.weights(s);
  // The norm is homogeneous in c; solve for c / max|c_i| so the Dykstra
  // tolerances act relative to the data.
  double scale = 0.0;
  for (std::size_t i : active) scale = std::max(scale, std::abs(c[i]));
  Vector rhs(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) rhs[k] = std::abs(c[active[k]]) / scale;

  // f -> -f maps pattern sigma to -sigma, so the first active sign is fixed to +.
  // Bit k set means sigma_k = -1; patterns run in lexicographic order with + < -,
  // and a strict improvement is required to replace the incumbent.
  const std::uint64_t patterns = std::uint64_t{1} << (active.size() - 1);
  Matrix a(active.size(), n);
  bool found = false;
  for (std::uint64_t p = 0; p < patterns; ++p) {
    for (std::size_t k = 0; k < active.size(); ++k) {
      const bool negative = k > 0 && ((p >> (active.size() - 1 - k)) & 1U);
      const auto row = frame.row(active[k]);
      for (std::size_t j = 0; j < n; ++j) a(k, j) = negative ? -row[j] : row[j];
    }
    DykstraOptions options;
    if (found) options.cutoff = best.value;
    const auto piece = min_norm_polyhedron(a, rhs, weights, options);
    if (piece.status != PolyhedronStatus::solved) continue;
    if (!found || piece.value < best.value) {
      best.value = piece.value;
      best.witness = piece.point;
      found = true;
    }
  }
  if (!found) throw std::logic_error("oracle: every sign pattern infeasible for a frame without zero rows");
  best.value *= scale;
  for (double& x : best.witness) x *= scale;
  if (!member_Mc(frame, c, best.witness, 1e-9)) {
    throw std::logic_error("oracle: witness failed the membership post-check");
  }
  return best;
}

}  // namespace thetaframe
