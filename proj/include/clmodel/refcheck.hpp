#pragma once

#include <string>
#include <vector>

namespace clmodel {

// Validation of the model against the published reference figures for the
// bundled machines: the prediction grid, the in-cache balance worked example,
// the stencil regime table, the two cycle-breakdown figures, and the derived
// metrics of the measured dataset. Each item prints PASS/FAIL; `notes`
// carries per-value detail for failures and known source-data deviations.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::vector<std::string> notes;
};

std::vector<CheckResult> run_reference_checks();

// Pretty-prints one result line (+ indented notes).
std::string format_check(const CheckResult& result);

}  // namespace clmodel
