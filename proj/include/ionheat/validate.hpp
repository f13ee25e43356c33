#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Named validation suites tying the Monte Carlo estimators to the closed
// forms. Each check records the measured value and its bound so summaries
// are self-describing; a suite passes iff every check passes.
namespace ionheat {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string comparator;  // "<=" or ">="
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t realizations = 0;
  std::vector<CheckResult> checks;
  bool pass = false;
};

// Suites: gaussian-identity, closed-form, quadrature-crosscheck,
// mode-selectivity, noise-stats.
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);

// mode_selectivity_ions applies to the mode-selectivity suite only.
SuiteResult run_suite(const std::string& name, std::size_t realizations, std::uint64_t seed,
                      int mode_selectivity_ions = 3);

}  // namespace ionheat
