#pragma once

// End-to-end acceptance checks. Each criterion is self-contained, pins its
// own tolerances and reports measured values alongside the verdict.

#include <cstdint>
#include <string>
#include <vector>

namespace tripod::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_budget = 0.0;  ///< seconds
};

std::vector<int> criterion_ids();

/// Throws std::out_of_range for an unknown id.
CriterionResult run_criterion(int id, std::uint64_t seed = 1);

std::string format_line(const CriterionResult& result);

}  // namespace tripod::acceptance
