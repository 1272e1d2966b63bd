#pragma once

#include <string>
#include <vector>

namespace dyncomp {

struct CriterionResult {
  int id = 0;
  std::string title;
  /// The numeric check held and the runtime stayed under its limit.
  bool passed = false;
  bool check_held = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

/// Runs the acceptance criteria, all of them when `only` is empty.
std::vector<CriterionResult> run_acceptance(const std::vector<int> &only = {});

/// "PASS  3  external-angle stability ... 0.41 s (limit 30 s)".
std::string format_line(const CriterionResult &r);

inline constexpr int kCriterionCount = 12;

} // namespace dyncomp
