#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thetaframe/conditions.hpp"
#include "thetaframe/frame.hpp"
#include "thetaframe/hierarchy.hpp"
#include "thetaframe/reconstruction.hpp"
#include "thetaframe/sequence.hpp"
#include "thetaframe/theta.hpp"

namespace thetaframe {

using json = nlohmann::json;

/// Malformed input. The message starts with the offending field path
/// (e.g. "frame.blocks[1].t") or with "line:column" for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors become ConfigError with line and column.
json parse_json_text(std::string_view text, std::string_view source);

json to_json(const ScalarSequence& c);
ScalarSequence sequence_from_json(const json& j, const std::string& path = "sequence");

/// {"blocks":[{"mult":n,"t":[...]},...]} or {"matrix":[[...],...]}.
json to_json(const Frame& frame);
Frame frame_from_json(const json& j, const std::string& path = "frame");

/// {"weights":[[level 0], [level 1], ...]}.
json to_json(const WeightHierarchy& h);
WeightHierarchy hierarchy_from_json(const json& j, const std::string& path = "hierarchy");

/// {"value":..., "witness":[...], "method":"closed-form"|"oracle", "level":s}.
json to_json(const ThetaNormResult& r);

/// {"dimension":J, "count":m, "entries":[{"i":..,"j":..,"value":..},...]}; indices zero-based.
json to_json(const DualFamily& dual);
DualFamily dual_from_json(const json& j, const std::string& path = "dual");

json to_json(const ConditionReport& report);
/// One row per level: verdicts, bounds and reconstruction figures.
std::string report_csv(const ConditionReport& report);

/// Frame, hierarchy and run parameters of one CLI invocation.
struct RunConfig {
  explicit RunConfig(Frame f) : frame(std::move(f)) {}

  Frame frame;
  /// Absent: polynomial weights (1+j)^s up to `levels`.
  std::optional<WeightHierarchy> hierarchy;
  std::size_t levels = 2;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::vector<double> eps_grid = default_eps_grid();
  bool oracle = false;
  /// Explicit dual sequence vectors (required for F-frame verdicts on general frames).
  std::optional<std::vector<Vector>> dual;
};

RunConfig config_from_json(const json& j);
json to_json(const RunConfig& config);

/// The explicit hierarchy cut to levels 0..levels, or the polynomial family.
WeightHierarchy resolve_hierarchy(const RunConfig& config);

}  // namespace thetaframe
