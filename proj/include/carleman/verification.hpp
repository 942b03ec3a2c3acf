#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carleman {

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CriterionResult> results;

  [[nodiscard]] bool all_passed() const;
};

/// The twelve logistic-map checks, run end to end on the mu = 4 and mu = 2 maps.
SuiteReport run_acceptance_suite();

/// M^{s+t} against M^s M^t for (0.3, 0.7), (0.5, 0.5), (1.2, -0.2) at dimension `dim`.
SuiteReport run_semigroup_suite(int dim);

/// Chain-rule Lyapunov estimates from two seeds, each within 2% of ln 2.
SuiteReport run_lyapunov_suite(int n);

/// Looks a suite up by name: logistic4 (alias acceptance), semigroup, lyapunov.
SuiteReport run_suite(const std::string& name, int dim, int n);

std::string report_json(const SuiteReport& report);
void write_report_csv(std::ostream& out, const SuiteReport& report);

}  // namespace carleman
