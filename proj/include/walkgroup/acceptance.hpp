#pragma once

#include <string>
#include <vector>

namespace walkgroup {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  std::vector<std::string> details;
  double elapsed_ms = 0.0;
};

// The ten acceptance criteria. fast skips the quadrature-heavy parts
// (criteria 8 and 9, and the period-ratio identity inside 7).
std::vector<CriterionResult> run_acceptance(bool fast);

// Prints one [PASS]/[FAIL]/[SKIP] line per criterion plus detail lines;
// returns the number of failures.
int print_acceptance(const std::vector<CriterionResult>& results);

}  // namespace walkgroup
