#pragma once

#include <vector>

#include "cmap/config.hpp"

namespace cmap {

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skipped"
  Json details;

  bool passed() const { return status == "pass"; }
};

/// Runs the enabled checks.  A homogeneity failure gates everything built on
/// top of the prepotential: later checks are reported as skipped.
std::vector<CheckResult> run_check_suite(const Config& cfg);

Json make_report(const Config& cfg, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace cmap
