#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thetaframe/frame.hpp"
#include "thetaframe/hierarchy.hpp"
#include "thetaframe/reconstruction.hpp"
#include "thetaframe/sequence.hpp"
#include "thetaframe/theta.hpp"

namespace thetaframe {

struct A1Result {
  bool holds = false;
  double norm_c = 0.0;
  double norm_d = 0.0;
  double norm_sum = 0.0;  // norm of c + d
  /// Constructive r ∈ M^{c+d}; block frames only.
  std::optional<Vector> r;
  bool r_certified = false;
};

/// Triangle check norm(c+d) <= norm(c) + norm(d) for the attained infimum,
/// plus for block frames the explicit r built from the infimal witnesses of
/// c and d, certified by membership and ||r||_s <= ||f||_s + ||h||_s.
A1Result check_a1(const Frame& frame, const ScalarSequence& c, const ScalarSequence& d, const WeightHierarchy& h,
                  std::size_t s);

/// r = sum_j m_j e_j with m_j = max over block j of |c_i + d_i| / |t_i|.
/// Throws std::invalid_argument unless f ∈ M^c and g ∈ M^d.
Vector construct_r(const BlockFrameSpec& frame, const ScalarSequence& c, const ScalarSequence& d,
                   std::span<const double> f, std::span<const double> g, const WeightHierarchy& h, std::size_t s);

struct A2Result {
  bool holds = false;
  std::size_t k = 0;       // first tail index on the profile grid with norm < eps
  double tail_value = 0.0; // norm of c^(k)
};

/// Tail norms norm(c^(k)): at the block endpoints for block frames, at every
/// k = 0..m for general frames.
std::vector<TailNormPoint> tail_profile(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h,
                                        std::size_t s);

/// First profile point with value < eps.
A2Result first_tail_below(std::span<const TailNormPoint> profile, double eps);

/// Scans the tail profile (block endpoints for block frames, every index for
/// general frames) for the first k with norm(c^(k)) < eps.
A2Result check_a2(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s, double eps);

struct A3Result {
  bool holds = false;
  /// min over nonzero samples of norm(analysis(f)) / ||f||_s, capped at 1.
  double constant = 0.0;
  Vector worst_witness;
  std::size_t evaluated = 0;
  /// Block frames have A_s = 1 by construction; otherwise the value is sampled.
  bool exact = false;
};

A3Result check_a3(const Frame& frame, std::span<const Vector> samples, const WeightHierarchy& h, std::size_t s);

/// Gaussian vectors, every basis vector and every sign vector sum_j ±e_j
/// (first sign fixed, since f and -f give the same ratio).
std::vector<Vector> default_a3_samples(std::size_t dimension, std::size_t gaussian_count, std::mt19937_64& rng);

std::vector<double> default_eps_grid();

struct Verdict {
  bool holds = false;
  std::string provenance;
};

struct LevelReport {
  std::size_t level = 0;

  struct {
    bool holds = true;
    std::size_t pairs_checked = 0;
    bool r_certified = true;  // every constructive r passed (block frames)
    double worst_slack = 0.0; // max of norm(c+d) - norm(c) - norm(d)
    std::optional<std::pair<ScalarSequence, ScalarSequence>> counterexample;
  } a1;

  struct Evidence {
    ScalarSequence c;
    std::vector<TailNormPoint> profile;
    std::vector<std::pair<double, std::size_t>> k_for_eps;
  };
  struct {
    bool holds = true;
    std::vector<Evidence> evidence;
  } a2;

  A3Result a3;

  struct {
    std::optional<double> upper;  // Bessel bound 1 when A1 holds
    double lower = 0.0;
    bool tight = false;
  } bounds;

  Verdict bessel;
  Verdict frame;
  Verdict cb;

  /// max |closed form - oracle| / (1 + value) when cross-checking block frames.
  std::optional<double> oracle_deviation;
};

struct ReconstructionSummary {
  bool available = false;
  std::vector<VLevelCertificate> certificates;  // block frames
  std::vector<double> k_estimates;              // per level
  std::vector<double> max_residual;             // per level
  bool f_bounded = false;
};

struct ConditionReport {
  std::uint64_t seed = 0;
  std::string frame_kind;
  bool exact = false;
  AxiomReport axioms;
  std::vector<LevelReport> levels;
  ReconstructionSummary reconstruction;

  Verdict f_bessel;
  Verdict pre_f_frame;
  Verdict banach_frame;
  Verdict f_frame;
  bool tight = false;

  bool all_hold() const;
};

struct ReportOptions {
  std::uint64_t seed = 0;
  std::size_t a1_pairs = 200;
  std::size_t a2_sequences = 20;
  std::size_t a3_gaussian = 200;
  std::size_t reconstruction_samples = 200;
  std::vector<double> eps_grid = default_eps_grid();
  bool oracle_cross_check = false;
  /// Explicit dual for general frames; block frames build their own.
  std::optional<DualFamily> dual;
};

/// Fills bessel/frame/cb and the bounds of one level from its a1/a2/a3 results.
void derive_level_verdicts(LevelReport& level);
/// Fills the cross-level verdicts from the level reports and the reconstruction summary.
void derive_global_verdicts(ConditionReport& report);

ConditionReport assemble_verdicts(const Frame& frame, const WeightHierarchy& h, const ReportOptions& options = {});

}  // namespace thetaframe
