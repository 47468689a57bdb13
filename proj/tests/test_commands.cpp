#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetaframe/commands.hpp"

using namespace thetaframe;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("thetaframe_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd =
      "cd \"" + dir.string() + "\" && \"" + std::string(THETAFRAME_CLI_PATH) + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_CASE("theta-norm command") {
  RunConfig cfg(example_g1(3));
  cfg.levels = 1;
  std::ostringstream out;
  CHECK(run_theta_norm(cfg, {1, 2, 2, 3}, out) == kExitOk);
  const auto j = json::parse(out.str());
  REQUIRE(j["levels"].size() == 2);
  CHECK(j["levels"][0]["result"]["value"].get<double>() == doctest::Approx(std::sqrt(6.0)));

  std::ostringstream zero;
  CHECK(run_theta_norm(cfg, {}, zero) == kExitOk);
  CHECK(json::parse(zero.str())["levels"][0]["result"]["value"] == 0.0);

  cfg.oracle = true;
  std::ostringstream both;
  CHECK(run_theta_norm(cfg, {1, 2, 2, 3}, both) == kExitOk);
  CHECK(json::parse(both.str())["levels"][1]["difference"].get<double>() <= 1e-6);
}

TEST_CASE("examples command writes loadable configs") {
  const auto dir = scratch("examples");
  std::ostringstream out;
  CHECK(run_examples(dir, out) == kExitOk);
  for (const char* name : {"g1.json", "g2.json", "identity.json"}) CHECK(fs::exists(dir / name));

  const auto g1 = load_config(dir / "g1.json");
  CHECK(std::holds_alternative<BlockFrameSpec>(g1.frame));
  const auto g2 = load_config(dir / "g2.json");
  CHECK(std::holds_alternative<GeneralFrameSpec>(g2.frame));
  CHECK(g2.dual.has_value());
  const auto id = load_config(dir / "identity.json");
  const auto bounds = l2_frame_bounds(id.frame, resolve_hierarchy(id), 0);
  CHECK(bounds.lower == doctest::Approx(1.0));
  CHECK(bounds.upper == doctest::Approx(1.0));
  CHECK(to_json(load_config(dir / "g1.json")) == to_json(g1));
}

TEST_CASE("report command") {
  const auto dir = scratch("report");
  RunConfig cfg(example_g1(4));
  cfg.samples = 30;
  std::ostringstream out;
  CHECK(run_report(cfg, dir, out) == kExitOk);
  const auto j = json::parse(out.str());
  CHECK(j["f_frame"]["holds"] == true);
  CHECK(slurp(dir / "report.json") == out.str());
  CHECK(fs::exists(dir / "summary.csv"));

  std::ostringstream again;
  run_report(cfg, std::nullopt, again);
  CHECK(again.str() == out.str());

  RunConfig id(GeneralFrameSpec(Matrix::identity(3)));
  id.hierarchy = WeightHierarchy::trivial(3, 1);
  id.levels = 1;
  id.samples = 30;
  id.dual = std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::ostringstream idout;
  CHECK(run_report(id, std::nullopt, idout) == kExitOk);

  RunConfig cross(example_g1(3));
  cross.samples = 20;
  cross.oracle = true;
  std::ostringstream crossout;
  CHECK(run_report(cross, std::nullopt, crossout) == kExitOk);
  CHECK(json::parse(crossout.str())["oracle_max_deviation"].get<double>() < 1e-6);
}

TEST_CASE("oracle-validate command") {
  RunConfig cfg(example_g1(3));
  cfg.samples = 10;
  std::ostringstream out;
  CHECK(run_oracle_validate(cfg, out) == kExitOk);
}

TEST_CASE("CLI exit codes and diagnostics") {
  const auto dir = scratch("cli");
  REQUIRE(cli("examples --out \"" + dir.string() + "\"", dir).code == 0);

  auto r = cli("report --config \"" + (dir / "g1.json").string() + "\"", dir);
  CHECK(r.code == 0);
  CHECK_FALSE(fs::exists(dir / "report.json"));
  const auto first = r.out;
  r = cli("report --config \"" + (dir / "g1.json").string() + "\"", dir);
  CHECK(r.out == first);

  r = cli("theta-norm --config \"" + (dir / "g1.json").string() + "\" --seq 1,2,2,3", dir);
  CHECK(r.code == 0);
  CHECK(r.out.find("2.449489742783178") != std::string::npos);

  {
    std::ofstream bad(dir / "bad.json");
    bad << R"({"frame":{"blocks":[{"mult":1,"t":[0]}]}})";
  }
  r = cli("report --config \"" + (dir / "bad.json").string() + "\"", dir);
  CHECK(r.code == 2);
  CHECK(r.err.find("frame.blocks[0].t") != std::string::npos);

  {
    std::ofstream broken(dir / "broken.json");
    broken << "{\"frame\": ";
  }
  r = cli("report --config \"" + (dir / "broken.json").string() + "\"", dir);
  CHECK(r.code == 2);

  {
    std::ofstream tall(dir / "tall.json");
    tall << R"({"frame":{"matrix":[)";
    for (int i = 0; i < 21; ++i) tall << (i ? "," : "") << "[1,0]";
    tall << "]}}";
  }
  r = cli("theta-norm --config \"" + (dir / "tall.json").string() + "\" --seq 1", dir);
  CHECK(r.code == 3);

  {
    std::ofstream rank(dir / "rank.json");
    rank << R"({"frame":{"matrix":[[1,0],[2,0]]},"levels":1,"samples":20})";
  }
  r = cli("report --config \"" + (dir / "rank.json").string() + "\"", dir);
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["pre_f_frame"]["holds"] == false);

  CHECK(cli("no-such-command", dir).code == 2);
  CHECK(cli("report", dir).code == 2);
  CHECK(cli("report --config \"" + (dir / "missing.json").string() + "\"", dir).code == 2);
}
