#pragma once

// Config-driven experiment runner shared by the CLI and the tests.

#include <string>
#include <vector>

#include "qhj/config.hpp"

namespace qhj {

struct RunOptions {
  std::string out_dir = ".";
  int threads = 0;         // 0 = hardware concurrency
  double tolerance = 0.0;  // 0 = per-experiment default
};

/// Executes the experiment named in [experiment] kind; writes CSV/JSON
/// artifacts into out_dir. Returns the paths of the files written.
std::vector<std::string> run_experiment(const Config& cfg, const RunOptions& opt);

/// Non-fatal configuration diagnostics: semiclassical-regime violations,
/// validity coverage of requested regions, missing fields.
std::vector<std::string> validate_config(const Config& cfg);

}  // namespace qhj
