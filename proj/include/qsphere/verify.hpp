#pragma once

#include <string>
#include <vector>

namespace qsphere {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;  // failure description, empty on pass
};

// Runs the invariant suite of every module (quick profile; the unit tests and
// the acceptance binary enforce the full ranges).
std::vector<VerifyResult> run_verification();

}  // namespace qsphere
