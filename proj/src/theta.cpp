#include "thetaframe/theta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thetaframe/oracle.hpp"

namespace thetaframe {

std::string_view to_string(NormMethod method) {
  return method == NormMethod::closed_form ? "closed-form" : "oracle";
}

void check_within_truncation(const Frame& frame, const ScalarSequence& c) {
  if (c.size() > functional_count(frame)) {
    throw std::invalid_argument("sequence support " + std::to_string(c.size()) + " exceeds the " +
                                std::to_string(functional_count(frame)) + " functionals of the frame");
  }
}

bool member_Mc(const Frame& frame, const ScalarSequence& c, std::span<const double> f, double tol) {
  check_within_truncation(frame, c);
  const ScalarSequence g = analysis(frame, f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double need = std::abs(c[i]);
    if (need > std::abs(g[i]) + tol * std::max(1.0, need)) return false;
  }
  return true;
}

BlockMaxima block_maxima(const BlockFrameSpec& frame, const ScalarSequence& c) {
  check_within_truncation(frame, c);
  BlockMaxima out;
  out.values.assign(frame.dimension(), 0.0);
  out.active.resize(frame.dimension());
  const auto& k = frame.endpoints();
  for (std::size_t j = 0; j < frame.dimension(); ++j) {
    out.active[j] = k[j];
    for (std::size_t i = k[j]; i < k[j + 1]; ++i) {
      const double ratio = std::abs(c[i]) / std::abs(frame.scalar(i));
      if (ratio > out.values[j]) {
        out.values[j] = ratio;
        out.active[j] = i;
      }
    }
  }
  return out;
}

namespace {

ThetaNormResult closed_form(const BlockFrameSpec& frame, const ScalarSequence& c, const WeightHierarchy& h,
                            std::size_t s) {
  const auto maxima = block_maxima(frame, c);
  Vector witness = maxima.values;
  // |t_i| * (|c_i| / |t_i|) can round one ulp below |c_i|; step up until
  // every constraint of the block holds exactly
  const auto& k = frame.endpoints();
  for (std::size_t j = 0; j < frame.dimension(); ++j) {
    for (std::size_t i = k[j]; i < k[j + 1]; ++i) {
      while (std::abs(frame.scalar(i)) * witness[j] < std::abs(c[i])) {
        witness[j] = std::nextafter(witness[j], INFINITY);
      }
    }
  }
  ThetaNormResult r;
  r.value = level_norm(h, witness, s);
  r.witness = std::move(witness);
  r.method = NormMethod::closed_form;
  r.level = s;
  return r;
}

}  // namespace

ThetaNormResult theta_norm(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s,
                           NormMethod method) {
  check_compatible(frame, h);
  h.check_level(s);
  check_within_truncation(frame, c);
  if (method == NormMethod::oracle) return oracle_theta_norm(as_matrix(frame), c, h, s);
  const auto* block = std::get_if<BlockFrameSpec>(&frame);
  if (block == nullptr) throw std::invalid_argument("closed-form norm requires a block frame");
  return closed_form(*block, c, h, s);
}

ThetaNormResult theta_norm(const Frame& frame, const ScalarSequence& c, const WeightHierarchy& h, std::size_t s) {
  return theta_norm(frame, c, h, s,
                    std::holds_alternative<BlockFrameSpec>(frame) ? NormMethod::closed_form : NormMethod::oracle);
}

double canonical_vector_norm(const Frame& frame, std::size_t i, const WeightHierarchy& h, std::size_t s) {
  return 1.0 / functional_dual_norm(frame, i, h, s);
}

std::vector<TailNormPoint> tail_norm_profile(const BlockFrameSpec& frame, const ScalarSequence& c,
                                             const WeightHierarchy& h, std::size_t s) {
  std::vector<TailNormPoint> profile;
  profile.reserve(frame.endpoints().size());
  for (std::size_t k : frame.endpoints()) {
    profile.push_back({k, theta_norm(frame, tail(c, k), h, s, NormMethod::closed_form).value});
  }
  return profile;
}

}  // namespace thetaframe
