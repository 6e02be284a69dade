#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace necklace::cli {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Invariant checklist; with several eps values the order checks run too.
std::vector<Check> run_checks(const RunConfig& cfg);

Artifact verify_artifact(const std::vector<Check>& checks);

}  // namespace necklace::cli
