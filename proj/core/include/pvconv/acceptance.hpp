#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvconv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance battery (criterion `only` when nonzero), printing one
/// pass/fail line per criterion to `os`. Returns the per-criterion results;
/// overall success is the conjunction.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& os,
                                                  int only = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace pvconv
