// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bia {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the full verification suite (one entry per criterion) and prints a
// PASS/FAIL line per criterion to `log`.
std::vector<CriterionResult> run_acceptance(std::ostream& log, int workers);

// Convenience wrapper: returns 0 when every criterion passes, 1 otherwise.
int acceptance_main(std::ostream& log, int workers);

}  // namespace bia
