#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace dual_appell::cli {

struct SuiteResult {
  std::string name;
  bool ok = true;
  long checks = 0;
  double max_residual = 0.0;  // 0 for exact suites that pass
  Json witnesses = Json::object();
  double wall_ms = 0.0;
};

struct Report {
  Json json;
  bool ok = false;
};

// Runs every verification suite for the config. Reports are byte-identical
// for identical configs unless with_timings adds the wall-clock fields.
Report run_verify(const RunConfig& cfg, bool with_timings = false);

}  // namespace dual_appell::cli
