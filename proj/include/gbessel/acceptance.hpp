#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gbessel {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;
  bool passed() const;
};

/// Criteria 1-9 once; with `check_determinism` the suite runs a second time
/// and criterion 10 compares the two serialized reports byte for byte.
AcceptanceReport run_acceptance(std::uint64_t seed, bool check_determinism = true);

/// Report without wall-clock times (identical across runs with the same seed).
nlohmann::json to_json(const AcceptanceReport& report);

}  // namespace gbessel
