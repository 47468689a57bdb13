#pragma once

#include <cstddef>
#include <span>
#include <limits>
#include <stdexcept>
#include <string>

#include "thetaframe/frame.hpp"
#include "thetaframe/hierarchy.hpp"
#include "thetaframe/linalg.hpp"
#include "thetaframe/theta.hpp"

namespace thetaframe {

/// Raised when Dykstra's method hits its iteration cap without either
/// converging or stalling on an infeasible system.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a problem exceeds the enumeration limits of the oracle.
class OracleLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct DykstraOptions {
  double step_tolerance = 1e-10;
  double feasibility_tolerance = 1e-8;
  std::size_t max_iterations = 1'000'000;
  /// Cycles between stall checks on an infeasible-looking residual.
  std::size_t stall_window = 1000;
  /// Cycles between dual lower-bound checks.
  std::size_t certificate_interval = 10;
  /// Stop early once a dual bound proves the minimum exceeds this value.
  double cutoff = std::numeric_limits<double>::infinity();
};

/// above_cutoff: a dual certificate shows every feasible point has norm > cutoff.
enum class PolyhedronStatus { solved, infeasible, above_cutoff };

struct PolyhedronResult {
  PolyhedronStatus status = PolyhedronStatus::infeasible;
  Vector point;      // minimiser f (meaningful when solved)
  double value = 0;  // ||W f||_2
  std::size_t iterations = 0;
  double residual = 0;  // max distance to a violated half-space, in the W-metric
  double lower_bound = 0;  // best dual bound on the minimum seen during the run
};

/// min ||W f||_2 subject to A f >= b, with W = diag(weights) positive.
///
/// Runs Dykstra's cyclic projections onto the half-spaces in the W-metric,
/// starting from the origin. A cycle whose projections all move less than
/// step_tolerance ends the run. Every certificate_interval cycles, weak
/// duality turns the multipliers (and their growth over the interval) into a
/// lower bound lambda.b / ||A^T lambda|| on the minimum; a bound above cutoff
/// ends the run, and an unbounded one (growth with A^T lambda ~ 0, the
/// signature of an empty polyhedron) reports infeasible. As a fallback a
/// residual above feasibility_tolerance that improves by less than 1% over
/// stall_window cycles is reported infeasible.
PolyhedronResult min_norm_polyhedron(const Matrix& a, std::span<const double> b, std::span<const double> weights,
                                     const DykstraOptions& options = {});

struct OracleLimits {
  std::size_t max_functionals = 20;
  std::size_t max_dimension = 6;
};

/// inf { ||f||_s : |c_i| <= |g_i(f)| for all i } by enumerating sign
/// patterns of the active constraints and solving each convex piece.
ThetaNormResult oracle_theta_norm(const GeneralFrameSpec& frame, const ScalarSequence& c, const WeightHierarchy& h,
                                  std::size_t s, const OracleLimits& limits = {});

}  // namespace thetaframe
