#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "thetaframe/frame.hpp"
#include "thetaframe/hierarchy.hpp"
#include "thetaframe/sequence.hpp"

namespace thetaframe {

enum class NormMethod { closed_form, oracle };

std::string_view to_string(NormMethod method);

/// Value of the infimum norm of c at level s together with an attaining
/// element of M^c_s.
struct ThetaNormResult {
  double value = 0.0;
  Vector witness;
  NormMethod method = NormMethod::closed_form;
  std::size_t level = 0;
};

/// Per-block maxima c~_j = max_{i in block j} |c_i| / |t_i|.
struct BlockMaxima {
  std::vector<double> values;
  /// Functional index realising each maximum, lowest index on ties.
  std::vector<std::size_t> active;
};

/// Throws std::invalid_argument when c has support beyond the frame's
/// functional count.
void check_within_truncation(const Frame& frame, const ScalarSequence& c);

/// f ∈ M^c, i.e. |c_i| <= |g_i(f)| for every i. With tol > 0 each constraint
/// is relaxed by tol * max(1, |c_i|).
bool member_Mc(const Frame& frame, const ScalarSequence& c, std::span<const double> f, double tol = 0.0);

BlockMaxima block_maxima(const BlockFrameSpec& frame, const ScalarSequence& c);

/// inf { ||f||_s : f ∈ M^c_s }.
///
/// closed_form applies to block frames only: the infimum is attained at
/// f* = sum_j c~_j e_j with value sqrt(sum_j a[s][j]^2 c~_j^2). The oracle
/// method enumerates sign patterns and works on any frame.
ThetaNormResult theta_norm(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s,
                           NormMethod method);

/// Closed form for block frames, oracle otherwise.
ThetaNormResult theta_norm(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s);

/// Norm of the canonical vector z_i at level s, 1 / ||g_i|_{X_s}||*.
double canonical_vector_norm(const Frame& frame, std::size_t i, const WeightHierarchy& h, std::size_t s);

struct TailNormPoint {
  std::size_t k = 0;
  double value = 0.0;
};

/// Norms of c^(k) at the block endpoints k = k_0, k_1, ..., k_J.
std::vector<TailNormPoint> tail_norm_profile(const BlockFrameSpec& frame, const ScalarSequence& c,
                                             const WeightHierarchy& h, std::size_t s);

}  // namespace thetaframe
