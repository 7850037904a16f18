// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace risnet::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The acceptance suite: one entry per criterion, evaluated at the pinned
// tolerances. quick shrinks the sample counts and sweep grids for a smoke
// run; the full suite is the gate.
std::vector<CheckResult> run_acceptance(bool quick, std::ostream* progress);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace risnet::validate
