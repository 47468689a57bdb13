#include "thetaframe/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thetaframe/oracle.hpp"

namespace thetaframe {

namespace {

bool is_block(const Frame& frame) { return std::holds_alternative<BlockFrameSpec>(frame); }

double triangle_tolerance(const Frame& frame) { return is_block(frame) ? 1e-9 : 1e-7; }

ScalarSequence random_sequence(std::size_t m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(0.75);
  std::vector<double> c(m);
  for (double& x : c) {
    const double v = normal(rng);
    x = keep(rng) ? v : 0.0;
  }
  return ScalarSequence(std::move(c));
}

}  // namespace

Vector construct_r(const BlockFrameSpec& frame, const ScalarSequence& c, const ScalarSequence& d,
                   std::span<const double> f, std::span<const double> g, const WeightHierarchy& h, std::size_t s) {
  check_compatible(frame, h);
  h.check_level(s);
  if (!member_Mc(frame, c, f)) throw std::invalid_argument("construct_r: f is not in M^c");
  if (!member_Mc(frame, d, g)) throw std::invalid_argument("construct_r: h is not in M^d");
  const ScalarSequence sum = c + d;
  Vector r = block_maxima(frame, sum).values;
  const auto& k = frame.endpoints();
  for (std::size_t j = 0; j < frame.dimension(); ++j)
    for (std::size_t i = k[j]; i < k[j + 1]; ++i)
      while (std::abs(frame.scalar(i)) * r[j] < std::abs(sum[i])) r[j] = std::nextafter(r[j], INFINITY);
  return r;
}

A1Result check_a1(const Frame& frame, const ScalarSequence& c, const ScalarSequence& d, const WeightHierarchy& h,
                  std::size_t s) {
  const auto nc = theta_norm(frame, c, h, s);
  const auto nd = theta_norm(frame, d, h, s);
  const auto nsum = theta_norm(frame, c + d, h, s);
  A1Result out;
  out.norm_c = nc.value;
  out.norm_d = nd.value;
  out.norm_sum = nsum.value;
  const double tol = triangle_tolerance(frame) * (1.0 + nc.value + nd.value);
  out.holds = nsum.value <= nc.value + nd.value + tol;

  if (const auto* block = std::get_if<BlockFrameSpec>(&frame)) {
    Vector r = construct_r(*block, c, d, nc.witness, nd.witness, h, s);
    const double bound = level_norm(h, nc.witness, s) + level_norm(h, nd.witness, s);
    out.r_certified = member_Mc(frame, c + d, r) && level_norm(h, r, s) <= bound * (1.0 + 1e-12);
    out.r = std::move(r);
  }
  return out;
}

std::vector<TailNormPoint> tail_profile(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h,
                                        std::size_t s) {
  if (const auto* block = std::get_if<BlockFrameSpec>(&frame)) return tail_norm_profile(*block, c, h, s);
  std::vector<TailNormPoint> profile;
  for (std::size_t k = 0; k <= functional_count(frame); ++k) {
    profile.push_back({k, theta_norm(frame, tail(c, k), h, s).value});
  }
  return profile;
}

A2Result first_tail_below(std::span<const TailNormPoint> profile, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("check_a2: eps must be positive");
  for (const auto& point : profile) {
    if (point.value < eps) return {true, point.k, point.value};
  }
  return {false, profile.back().k, profile.back().value};
}

A2Result check_a2(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("check_a2: eps must be positive");
  return first_tail_below(tail_profile(frame, c, h, s), eps);
}

A3Result check_a3(const Frame& frame, std::span<const Vector> samples, const WeightHierarchy& h, std::size_t s) {
  if (samples.empty()) throw std::invalid_argument("check_a3: empty sample");
  A3Result out;
  out.constant = std::numeric_limits<double>::infinity();
  for (const auto& f : samples) {
    const double norm = level_norm(h, f, s);
    if (norm == 0.0) continue;
    const double ratio = theta_norm(frame, analysis(frame, f), h, s).value / norm;
    ++out.evaluated;
    if (ratio < out.constant) {
      out.constant = ratio;
      out.worst_witness = f;
    }
  }
  if (out.evaluated == 0) throw std::invalid_argument("check_a3: sample contains only zero vectors");
  // f itself lies in M^{g(f)}, so the true ratio never exceeds 1
  out.constant = std::min(out.constant, 1.0);
  out.holds = out.constant > 0.0;
  out.exact = is_block(frame);
  return out;
}

std::vector<Vector> default_a3_samples(std::size_t dimension, std::size_t gaussian_count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Vector> out;
  for (std::size_t n = 0; n < gaussian_count; ++n) {
    Vector f(dimension);
    for (double& x : f) x = normal(rng);
    out.push_back(std::move(f));
  }
  for (std::size_t j = 0; j < dimension; ++j) {
    Vector e(dimension, 0.0);
    e[j] = 1.0;
    out.push_back(std::move(e));
  }
  const std::size_t patterns = std::size_t{1} << (dimension - 1);
  for (std::size_t p = 0; p < patterns; ++p) {
    Vector f(dimension, 1.0);
    for (std::size_t j = 1; j < dimension; ++j)
      if ((p >> (j - 1)) & 1U) f[j] = -1.0;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<double> default_eps_grid() { return {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

bool ConditionReport::all_hold() const {
  return f_bessel.holds && pre_f_frame.holds && banach_frame.holds && f_frame.holds;
}

void derive_level_verdicts(LevelReport& level) {
  level.bessel = {level.a1.holds, level.a1.holds ? "A1: solid BK-space, Bessel with bound 1"
                                                 : "A1 violated: Bessel bound not established"};
  level.frame = {level.a3.holds, level.a3.holds ? "frame iff A3: lower bound from A3 constant"
                                                : "frame iff A3: no positive lower constant"};
  level.cb = {level.a2.holds, level.a2.holds ? "CB iff A2: tails vanish" : "CB iff A2: a tail stayed above eps"};
  level.bounds.upper = level.a1.holds ? std::optional<double>(1.0) : std::nullopt;
  level.bounds.lower = level.a3.constant;
  level.bounds.tight = level.a1.holds && level.a3.holds && std::abs(level.a3.constant - 1.0) <= 1e-9;
}

void derive_global_verdicts(ConditionReport& report) {
  bool a1 = !report.levels.empty();
  bool a2 = a1;
  bool a3 = a1;
  bool tight = a1;
  for (const auto& level : report.levels) {
    a1 = a1 && level.a1.holds;
    a2 = a2 && level.a2.holds;
    a3 = a3 && level.a3.holds;
    tight = tight && level.bounds.tight;
  }
  report.tight = tight;
  report.f_bessel = {a1 && a2, a1 && a2 ? "A1 and A2 at every level: solid CB-spaces, F-Bessel"
                                        : "A1 or A2 fails at some level"};
  report.pre_f_frame = {a1 && a2 && a3, a1 && a2 && a3 ? "A1, A2 and A3 at every level"
                                                       : "A1, A2 or A3 fails at some level"};

  const auto& rec = report.reconstruction;
  const bool level0 = !report.levels.empty() && report.levels.front().a1.holds && report.levels.front().a3.holds;
  const bool v0 = rec.available && !rec.k_estimates.empty() && std::isfinite(rec.k_estimates.front()) &&
                  (rec.certificates.empty() || (rec.certificates.front().per_index_ok &&
                                                rec.certificates.front().bounded_ok)) &&
                  !rec.max_residual.empty() && rec.max_residual.front() <= 1e-12;
  if (!rec.available) {
    report.banach_frame = {false, "no reconstruction operator available"};
    report.f_frame = {false, "no reconstruction operator available"};
    return;
  }
  report.banach_frame = {level0 && v0, level0 && v0 ? "frame at level 0 with bounded reconstruction operator"
                                                    : "level-0 frame or reconstruction check failed"};
  const bool f = report.pre_f_frame.holds && rec.f_bounded;
  report.f_frame = {f, f ? "pre-F-frame with F-bounded reconstruction operator"
                         : "pre-F-frame or F-bounded reconstruction check failed"};
}

ConditionReport assemble_verdicts(const Frame& frame, const WeightHierarchy& h, const ReportOptions& options) {
  check_compatible(frame, h);
  ConditionReport report;
  report.seed = options.seed;
  report.frame_kind = is_block(frame) ? "block" : "general";
  report.exact = is_block(frame);
  report.axioms = verify_axioms(h, 200, options.seed);

  std::mt19937_64 rng(options.seed);
  const std::size_t m = functional_count(frame);
  const std::size_t n = dimension(frame);

  for (std::size_t s = 0; s <= h.top_level(); ++s) {
    LevelReport level;
    level.level = s;

    double deviation = 0.0;
    for (std::size_t p = 0; p < options.a1_pairs; ++p) {
      const ScalarSequence c = random_sequence(m, rng);
      const ScalarSequence d = random_sequence(m, rng);
      const auto a1 = check_a1(frame, c, d, h, s);
      ++level.a1.pairs_checked;
      level.a1.worst_slack = std::max(level.a1.worst_slack, a1.norm_sum - a1.norm_c - a1.norm_d);
      if (a1.r && !a1.r_certified) level.a1.r_certified = false;
      if (!a1.holds && level.a1.holds) {
        level.a1.holds = false;
        level.a1.counterexample = std::make_pair(c, d);
      }
      if (options.oracle_cross_check && is_block(frame)) {
        const double closed = a1.norm_c;
        const double oracle = theta_norm(frame, c, h, s, NormMethod::oracle).value;
        deviation = std::max(deviation, std::abs(closed - oracle) / (1.0 + closed));
      }
    }
    if (!level.a1.r_certified) level.a1.holds = false;
    if (options.oracle_cross_check && is_block(frame)) level.oracle_deviation = deviation;

    for (std::size_t q = 0; q < options.a2_sequences; ++q) {
      LevelReport::Evidence ev;
      ev.c = random_sequence(m, rng);
      ev.profile = tail_profile(frame, ev.c, h, s);
      for (double eps : options.eps_grid) {
        const auto a2 = first_tail_below(ev.profile, eps);
        ev.k_for_eps.emplace_back(eps, a2.k);
        level.a2.holds = level.a2.holds && a2.holds;
      }
      level.a2.evidence.push_back(std::move(ev));
    }

    const auto samples = default_a3_samples(n, options.a3_gaussian, rng);
    level.a3 = check_a3(frame, samples, h, s);

    derive_level_verdicts(level);
    report.levels.push_back(std::move(level));
  }

  // reconstruction operator
  std::optional<DualFamily> dual = options.dual;
  const auto* block = std::get_if<BlockFrameSpec>(&frame);
  if (!dual && block) dual = build_dual(*block);
  auto& rec = report.reconstruction;
  if (dual) {
    rec.available = true;
    rec.f_bounded = true;
    if (block) {
      rec.certificates = v_norm_certificate(*block, *dual, h, options.reconstruction_samples, options.seed);
      for (const auto& cert : rec.certificates) {
        rec.k_estimates.push_back(cert.k_estimate);
        rec.f_bounded = rec.f_bounded && cert.per_index_ok && cert.bounded_ok;
      }
    } else {
      for (std::size_t s = 0; s <= h.top_level(); ++s) {
        double k_est = 0.0;
        for (std::size_t q = 0; q < options.a2_sequences; ++q) {
          const ScalarSequence c = random_sequence(m, rng);
          const double theta = theta_norm(frame, c, h, s).value;
          if (theta > 0.0) k_est = std::max(k_est, level_norm(h, apply_v(*dual, c, h, s).value, s) / theta);
        }
        rec.k_estimates.push_back(k_est);
        rec.f_bounded = rec.f_bounded && std::isfinite(k_est);
      }
    }
    std::normal_distribution<double> normal;
    Vector f(n);
    for (std::size_t s = 0; s <= h.top_level(); ++s) {
      double worst = 0.0;
      for (std::size_t q = 0; q < options.reconstruction_samples; ++q) {
        for (double& x : f) x = normal(rng);
        worst = std::max(worst, expansion_residual(frame, *dual, f, h, s));
      }
      rec.max_residual.push_back(worst);
      rec.f_bounded = rec.f_bounded && worst <= 1e-12;
    }
  }

  derive_global_verdicts(report);
  return report;
}

}  // namespace thetaframe
