#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gerbe {

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string module;
  bool pass = false;
  std::string detail;  // the first failing case, or a summary
  double seconds = 0;
  double limit = 0;  // wall-clock budget in seconds
};

// The battery items run by verify, in order.
std::vector<int> battery_ids();
std::string criterion_module(int id);
// Runs one battery item (1 ... 12); throws std::invalid_argument for an unknown id.
CriterionResult run_criterion(int id, std::uint32_t seed);
// Items whose module matches only (all when empty); throws std::invalid_argument for an
// unknown module name.
std::vector<CriterionResult> run_battery(std::uint32_t seed, const std::string& only = {});

// "[PASS] 3 deligne: title (0.41 s of 120.00 s) detail", without the timing when with_time is
// false.
std::string format_result(const CriterionResult& r, bool with_time = true);

}  // namespace gerbe
