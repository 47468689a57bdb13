#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thetaframe/commands.hpp"
#include "thetaframe/oracle.hpp"

using namespace thetaframe;

namespace {

struct Flags {
  std::string config;
  std::string seq;
  std::optional<std::size_t> levels;
  std::optional<std::uint64_t> seed;
  bool oracle = false;
  std::string out;
  std::string examples_out = ".";
};

RunConfig configured(const Flags& flags) {
  RunConfig config = load_config(flags.config);
  if (flags.levels) config.levels = *flags.levels;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.oracle) config.oracle = true;
  return config;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleLimitError& e) {
    std::cerr << "oracle limit: " << e.what() << "\n";
    return kExitOracleLimit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerdictFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-space norms, condition checks and frame verdicts for functional sequences"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", flags.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--levels", flags.levels, "Highest level s to evaluate");
    cmd->add_option("--seed", flags.seed, "Random seed");
    cmd->add_flag("--oracle", flags.oracle, "Cross-check closed forms with the brute-force oracle");
  };

  auto* theta = app.add_subcommand("theta-norm", "Norm of a sequence at every level");
  add_common(theta);
  theta->add_option("--seq", flags.seq, "Sequence as a JSON array or comma-separated numbers")->required();

  auto* report = app.add_subcommand("report", "Condition checks and frame verdicts");
  add_common(report);
  report->add_option("--out", flags.out, "Directory for report.json and summary.csv");

  auto* validate = app.add_subcommand("oracle-validate", "Closed form against the oracle on random sequences");
  add_common(validate);

  auto* examples = app.add_subcommand("examples", "Write the built-in example configurations");
  examples->add_option("--out", flags.examples_out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*theta) {
    return guarded([&] {
      const RunConfig config = configured(flags);
      const std::string text = flags.seq.starts_with('[') ? flags.seq : "[" + flags.seq + "]";
      const auto c = sequence_from_json(parse_json_text(text, "--seq"), "--seq");
      return run_theta_norm(config, c, std::cout);
    });
  }
  if (*report) {
    return guarded([&] {
      std::optional<std::filesystem::path> out;
      if (!flags.out.empty()) out = flags.out;
      return run_report(configured(flags), out, std::cout);
    });
  }
  if (*validate) {
    return guarded([&] { return run_oracle_validate(configured(flags), std::cout); });
  }
  return guarded([&] { return run_examples(flags.examples_out, std::cout); });
}
