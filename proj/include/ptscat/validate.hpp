#pragma once

#include <string>
#include <vector>

namespace ptscat {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Analytic-versus-numeric consistency checks across all models. Each check
/// takes well under a second.
std::vector<CheckResult> run_validation();

}  // namespace ptscat
