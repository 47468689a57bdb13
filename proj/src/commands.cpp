#include "thetaframe/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "thetaframe/oracle.hpp"

namespace thetaframe {

namespace {

constexpr double kOracleTolerance = 1e-6;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(parse_json_text(buffer.str(), path.string()));
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp.string() + ": cannot open for writing");
    out << contents;
    if (!out.flush()) throw std::runtime_error(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

int run_theta_norm(const RunConfig& config, const ScalarSequence& c, std::ostream& out) {
  const WeightHierarchy h = resolve_hierarchy(config);
  const bool block = std::holds_alternative<BlockFrameSpec>(config.frame);
  json levels = json::array();
  for (std::size_t s = 0; s <= h.top_level(); ++s) {
    json entry = {{"level", s}};
    if (!block) {
      entry["result"] = to_json(theta_norm(config.frame, c, h, s, NormMethod::oracle));
    } else if (!config.oracle) {
      entry["result"] = to_json(theta_norm(config.frame, c, h, s, NormMethod::closed_form));
    } else {
      const auto closed = theta_norm(config.frame, c, h, s, NormMethod::closed_form);
      const auto oracle = theta_norm(config.frame, c, h, s, NormMethod::oracle);
      entry["result"] = to_json(closed);
      entry["oracle"] = to_json(oracle);
      entry["difference"] = std::abs(closed.value - oracle.value);
    }
    levels.push_back(std::move(entry));
  }
  out << dump({{"sequence", to_json(c)}, {"levels", levels}});
  return kExitOk;
}

int run_report(const RunConfig& config, const std::optional<std::filesystem::path>& out_dir, std::ostream& out) {
  const WeightHierarchy h = resolve_hierarchy(config);
  ReportOptions options;
  options.seed = config.seed;
  options.a1_pairs = config.samples;
  options.a3_gaussian = config.samples;
  options.reconstruction_samples = config.samples;
  options.eps_grid = config.eps_grid;
  options.oracle_cross_check = config.oracle;
  if (config.dual) options.dual = DualFamily(dimension(config.frame), *config.dual);

  const ConditionReport report = assemble_verdicts(config.frame, h, options);
  json j = to_json(report);
  bool ok = report.all_hold();
  if (config.oracle) {
    double worst = 0.0;
    for (const auto& level : report.levels)
      if (level.oracle_deviation) worst = std::max(worst, *level.oracle_deviation);
    j["oracle_max_deviation"] = worst;
    ok = ok && worst < kOracleTolerance;
  }
  const std::string text = dump(j);
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_file_atomically(*out_dir / "report.json", text);
    write_file_atomically(*out_dir / "summary.csv", report_csv(report));
  }
  out << text;
  return ok ? kExitOk : kExitVerdictFailed;
}

int run_oracle_validate(const RunConfig& config, std::ostream& out) {
  const auto* block = std::get_if<BlockFrameSpec>(&config.frame);
  if (block == nullptr) throw ConfigError("frame: oracle-validate needs a block frame (closed form available)");
  const WeightHierarchy h = resolve_hierarchy(config);
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal;
  json levels = json::array();
  double worst = 0.0;
  std::vector<double> entries(block->functional_count());
  for (std::size_t s = 0; s <= h.top_level(); ++s) {
    double level_worst = 0.0;
    for (std::size_t n = 0; n < config.samples; ++n) {
      for (double& x : entries) x = normal(rng);
      const ScalarSequence c(entries);
      const double closed = theta_norm(*block, c, h, s, NormMethod::closed_form).value;
      const double oracle = theta_norm(*block, c, h, s, NormMethod::oracle).value;
      level_worst = std::max(level_worst, std::abs(closed - oracle) / (1.0 + closed));
    }
    worst = std::max(worst, level_worst);
    levels.push_back({{"level", s}, {"samples", config.samples}, {"max_deviation", level_worst}});
  }
  const bool ok = worst <= kOracleTolerance;
  out << dump({{"seed", config.seed},
               {"tolerance", kOracleTolerance},
               {"levels", levels},
               {"max_deviation", worst},
               {"passed", ok}});
  return ok ? kExitOk : kExitVerdictFailed;
}

int run_examples(const std::filesystem::path& out_dir, std::ostream& out) {
  std::filesystem::create_directories(out_dir);

  RunConfig g1(example_g1(4));
  g1.levels = 2;

  RunConfig g2(example_g2(4));
  g2.levels = 2;
  g2.dual = example_g2_dual(4).vectors();

  RunConfig identity(GeneralFrameSpec(Matrix::identity(3)));
  identity.hierarchy = WeightHierarchy::trivial(3, 2);
  identity.dual = make_dual(identity.frame, std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).vectors();

  const std::pair<const char*, const RunConfig*> files[] = {
      {"g1.json", &g1}, {"g2.json", &g2}, {"identity.json", &identity}};
  for (const auto& [name, config] : files) {
    write_file_atomically(out_dir / name, dump(to_json(*config)));
    out << (out_dir / name).string() << "\n";
  }
  return kExitOk;
}

}  // namespace thetaframe
