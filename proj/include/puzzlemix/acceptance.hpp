#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace puzzlemix {

inline constexpr int kCriterionCount = 12;

struct Check {
  std::string name;
  double value = 0;
  std::string requirement;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass = false;
  double seconds = 0;
};

// Runs one acceptance criterion (1..12) with its bundled seed.
CriterionResult run_criterion(int id, int workers);

std::string criterion_title(int id);

nlohmann::json to_json(const CriterionResult& r);

// One "[PASS]/[FAIL] criterion k: title" line plus per-check details.
void print_report(const CriterionResult& r, std::ostream& os);

}  // namespace puzzlemix
