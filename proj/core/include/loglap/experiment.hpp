#pragma once

#include <string>
#include <vector>

#include "loglap/config.hpp"

namespace loglap {

struct RunOptions {
  /// Output directory; empty means "use the config's output field".
  std::string out_dir;
  int threads = 1;
  bool verbose = false;
};

struct RunOutcome {
  bool passed = true;
  /// One-line human-readable summary (names the report on failure).
  std::string detail;
  /// Files written, relative to the output directory.
  std::vector<std::string> outputs;
};

/// Executes one experiment and persists its artifacts: CSV matrices, JSON
/// reports (all stamped with the config hash), and a manifest (the only file
/// carrying a timestamp).  Returns whether every asserted numerical check
/// passed.  Configuration-level failures throw ConfigError before any output
/// is written.
RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opt);

}  // namespace loglap
