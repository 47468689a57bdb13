#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "thetaframe/serialization.hpp"

namespace thetaframe {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerdictFailed = 1,
  kExitUsage = 2,
  kExitOracleLimit = 3,
};

RunConfig load_config(const std::filesystem::path& path);

/// Per-level norm of c; with config.oracle both methods and their difference.
int run_theta_norm(const RunConfig& config, const ScalarSequence& c, std::ostream& out);

/// Full condition report as JSON on `out`; with out_dir also writes
/// report.json and summary.csv there. Exit 0 iff every verdict holds.
int run_report(const RunConfig& config, const std::optional<std::filesystem::path>& out_dir, std::ostream& out);

/// Closed form against the oracle on config.samples random sequences per
/// level (block frames only). Exit 1 when a deviation exceeds 1e-6.
int run_oracle_validate(const RunConfig& config, std::ostream& out);

/// Writes g1.json, g2.json and identity.json into out_dir.
int run_examples(const std::filesystem::path& out_dir, std::ostream& out);

/// Writes through a temporary file and renames it into place.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace thetaframe
