#include "thetaframe/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace thetaframe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "not finite");
  return x;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> number_rows(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of arrays");
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) rows.push_back(numbers(j[r], path + "[" + std::to_string(r) + "]"));
  return rows;
}

template <class Fn>
auto wrap(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

}  // namespace

json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": JSON syntax error: " + e.what());
  }
}

json to_json(const ScalarSequence& c) { return json(std::vector<double>(c.entries().begin(), c.entries().end())); }

ScalarSequence sequence_from_json(const json& j, const std::string& path) {
  return ScalarSequence(numbers(j, path));
}

json to_json(const Frame& frame) {
  return std::visit(overloaded{[](const BlockFrameSpec& b) {
                                 json blocks = json::array();
                                 for (const auto& block : b.blocks()) {
                                   blocks.push_back({{"mult", block.multiplicity}, {"t", block.t}});
                                 }
                                 return json{{"blocks", blocks}};
                               },
                               [](const GeneralFrameSpec& g) {
                                 json rows = json::array();
                                 for (std::size_t i = 0; i < g.functional_count(); ++i) {
                                   rows.push_back(std::vector<double>(g.row(i).begin(), g.row(i).end()));
                                 }
                                 return json{{"matrix", rows}};
                               }},
                    frame);
}

Frame frame_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with \"blocks\" or \"matrix\"");
  const bool has_blocks = j.contains("blocks");
  const bool has_matrix = j.contains("matrix");
  if (has_blocks == has_matrix) fail(path, "exactly one of \"blocks\" or \"matrix\" is required");
  if (has_blocks) {
    const json& arr = j["blocks"];
    const std::string bpath = path + ".blocks";
    if (!arr.is_array() || arr.empty()) fail(bpath, "expected a non-empty array");
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string p = bpath + "[" + std::to_string(k) + "]";
      Block b;
      b.multiplicity = count(field(arr[k], p, "mult"), p + ".mult");
      b.t = numbers(field(arr[k], p, "t"), p + ".t");
      if (b.multiplicity == 0) fail(p + ".mult", "must be at least 1");
      if (b.t.size() != b.multiplicity) {
        fail(p, "mult is " + std::to_string(b.multiplicity) + " but t has " + std::to_string(b.t.size()) + " entries");
      }
      for (std::size_t i = 0; i < b.t.size(); ++i) {
        if (b.t[i] == 0.0) fail(p + ".t[" + std::to_string(i) + "]", "scalar must be nonzero");
      }
      blocks.push_back(std::move(b));
    }
    return wrap(bpath, [&] { return Frame(BlockFrameSpec(std::move(blocks))); });
  }
  auto rows = number_rows(j["matrix"], path + ".matrix");
  return wrap(path + ".matrix", [&] { return Frame(GeneralFrameSpec(Matrix::from_rows(rows))); });
}

json to_json(const WeightHierarchy& h) { return json{{"weights", h.table()}}; }

WeightHierarchy hierarchy_from_json(const json& j, const std::string& path) {
  auto rows = number_rows(field(j, path, "weights"), path + ".weights");
  return wrap(path + ".weights", [&] { return WeightHierarchy(std::move(rows)); });
}

json to_json(const ThetaNormResult& r) {
  return json{{"value", r.value}, {"witness", r.witness}, {"method", to_string(r.method)}, {"level", r.level}};
}

json to_json(const DualFamily& dual) {
  json entries = json::array();
  for (const auto& e : dual.sparse()) entries.push_back({{"i", e.i}, {"j", e.j}, {"value", e.value}});
  return json{{"dimension", dual.dimension()}, {"count", dual.count()}, {"entries", entries}};
}

DualFamily dual_from_json(const json& j, const std::string& path) {
  const std::size_t dim = count(field(j, path, "dimension"), path + ".dimension");
  const std::size_t n = count(field(j, path, "count"), path + ".count");
  const json& arr = field(j, path, "entries");
  if (!arr.is_array()) fail(path + ".entries", "expected an array");
  std::vector<SparseEntry> entries;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string p = path + ".entries[" + std::to_string(k) + "]";
    entries.push_back({count(field(arr[k], p, "i"), p + ".i"), count(field(arr[k], p, "j"), p + ".j"),
                       number(field(arr[k], p, "value"), p + ".value")});
  }
  return wrap(path, [&] { return DualFamily::from_sparse(dim, n, entries); });
}

json to_json(const ConditionReport& report) {
  auto verdict = [](const Verdict& v) { return json{{"holds", v.holds}, {"provenance", v.provenance}}; };
  json levels = json::array();
  for (const auto& level : report.levels) {
    json a1 = {{"holds", level.a1.holds},
               {"pairs_checked", level.a1.pairs_checked},
               {"r_certified", level.a1.r_certified},
               {"worst_slack", level.a1.worst_slack},
               {"counterexample", nullptr}};
    if (level.a1.counterexample) {
      a1["counterexample"] = {{"c", to_json(level.a1.counterexample->first)},
                              {"d", to_json(level.a1.counterexample->second)}};
    }
    json evidence = json::array();
    for (const auto& ev : level.a2.evidence) {
      json profile = json::array();
      for (const auto& p : ev.profile) profile.push_back({{"k", p.k}, {"value", p.value}});
      json ks = json::array();
      for (const auto& [eps, k] : ev.k_for_eps) ks.push_back({{"eps", eps}, {"k", k}});
      evidence.push_back({{"c", to_json(ev.c)}, {"profile", profile}, {"k_for_eps", ks}});
    }
    json entry = {
        {"level", level.level},
        {"a1", a1},
        {"a2", {{"holds", level.a2.holds}, {"evidence", evidence}}},
        {"a3",
         {{"holds", level.a3.holds},
          {"constant", level.a3.constant},
          {"worst_witness", level.a3.worst_witness},
          {"evaluated", level.a3.evaluated},
          {"basis", level.a3.exact ? "exact" : "empirical"}}},
        {"frame_bounds",
         {{"upper", level.bounds.upper ? json(*level.bounds.upper) : json(nullptr)},
          {"lower", level.bounds.lower},
          {"tight", level.bounds.tight}}},
        {"bessel", verdict(level.bessel)},
        {"frame", verdict(level.frame)},
        {"cb", verdict(level.cb)},
        {"oracle_deviation", level.oracle_deviation ? json(*level.oracle_deviation) : json(nullptr)},
    };
    levels.push_back(std::move(entry));
  }

  const auto& rec = report.reconstruction;
  json certs = json::array();
  for (const auto& cert : rec.certificates) {
    json checks = json::array();
    for (const auto& c : cert.checks) {
      checks.push_back({{"i", c.i},
                        {"dual_vector_norm", c.dual_vector_norm},
                        {"canonical_norm", c.canonical_norm},
                        {"opens_block", c.opens_block},
                        {"ok", c.ok}});
    }
    certs.push_back({{"level", cert.level},
                     {"k_estimate", cert.k_estimate},
                     {"per_index_ok", cert.per_index_ok},
                     {"bounded_ok", cert.bounded_ok},
                     {"checks", checks}});
  }

  return json{
      {"seed", report.seed},
      {"frame_kind", report.frame_kind},
      {"exact", report.exact},
      {"axioms",
       {{"norm_monotone", report.axioms.norm_monotone},
        {"samples", report.axioms.samples},
        {"worst_ratio", report.axioms.worst_ratio},
        {"nesting", report.axioms.nesting},
        {"density", report.axioms.density}}},
      {"levels", levels},
      {"reconstruction",
       {{"available", rec.available},
        {"f_bounded", rec.f_bounded},
        {"k_estimates", rec.k_estimates},
        {"max_residual", rec.max_residual},
        {"certificates", certs}}},
      {"f_bessel", verdict(report.f_bessel)},
      {"pre_f_frame", verdict(report.pre_f_frame)},
      {"banach_frame", verdict(report.banach_frame)},
      {"f_frame", verdict(report.f_frame)},
      {"tight", report.tight},
  };
}

std::string report_csv(const ConditionReport& report) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "level,a1,a2,a3,lower_bound,upper_bound,tight,bessel,frame,cb,k_estimate,max_residual,oracle_deviation\n";
  const auto& rec = report.reconstruction;
  for (const auto& level : report.levels) {
    const std::size_t s = level.level;
    out << s << ',' << level.a1.holds << ',' << level.a2.holds << ',' << level.a3.holds << ','
        << level.bounds.lower << ',';
    if (level.bounds.upper) out << *level.bounds.upper;
    out << ',' << level.bounds.tight << ',' << level.bessel.holds << ',' << level.frame.holds << ','
        << level.cb.holds << ',';
    if (s < rec.k_estimates.size()) out << rec.k_estimates[s];
    out << ',';
    if (s < rec.max_residual.size()) out << rec.max_residual[s];
    out << ',';
    if (level.oracle_deviation) out << *level.oracle_deviation;
    out << '\n';
  }
  return out.str();
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) fail("config", "expected an object");
  RunConfig config(frame_from_json(field(j, "config", "frame"), "frame"));
  if (j.contains("hierarchy")) config.hierarchy = hierarchy_from_json(j["hierarchy"], "hierarchy");
  if (j.contains("levels")) config.levels = count(j["levels"], "levels");
  if (j.contains("samples")) config.samples = count(j["samples"], "samples");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("eps_grid")) {
    config.eps_grid = numbers(j["eps_grid"], "eps_grid");
    if (config.eps_grid.empty()) fail("eps_grid", "must not be empty");
    for (std::size_t i = 0; i < config.eps_grid.size(); ++i)
      if (!(config.eps_grid[i] > 0.0)) fail("eps_grid[" + std::to_string(i) + "]", "must be positive");
  }
  if (j.contains("oracle")) {
    if (!j["oracle"].is_boolean()) fail("oracle", "expected true or false");
    config.oracle = j["oracle"].get<bool>();
  }
  if (j.contains("dual")) {
    const DualFamily dual = dual_from_json(j["dual"], "dual");
    config.dual = wrap("dual", [&] { return make_dual(config.frame, dual.vectors()).vectors(); });
  }
  if (config.hierarchy) {
    wrap("hierarchy", [&] {
      check_compatible(config.frame, *config.hierarchy);
      return 0;
    });
  }
  return config;
}

json to_json(const RunConfig& config) {
  json j = {{"frame", to_json(config.frame)},
            {"levels", config.levels},
            {"samples", config.samples},
            {"seed", config.seed},
            {"eps_grid", config.eps_grid},
            {"oracle", config.oracle}};
  if (config.hierarchy) j["hierarchy"] = to_json(*config.hierarchy);
  if (config.dual) j["dual"] = to_json(DualFamily(dimension(config.frame), *config.dual));
  return j;
}

WeightHierarchy resolve_hierarchy(const RunConfig& config) {
  if (!config.hierarchy) return WeightHierarchy::polynomial(dimension(config.frame), config.levels);
  const auto& table = config.hierarchy->table();
  if (config.levels + 1 >= table.size()) return *config.hierarchy;
  return WeightHierarchy(std::vector<std::vector<double>>(table.begin(), table.begin() + config.levels + 1));
}

}  // namespace thetaframe
