#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ginibrenet::validation {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  // Observed values against the required ones.
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct SuiteOptions {
  // Reduced replication budgets.
  bool quick = false;
  std::uint64_t seed = 20241016;
  unsigned threads = 1;
  // Criteria to run (1..11); empty runs all of them.
  std::vector<int> only;
  // Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

int criterion_count();
std::string criterion_name(int id);

CriterionResult run_criterion(int id, const SuiteOptions& opts);
std::vector<CriterionResult> run_suite(const SuiteOptions& opts);

// "PASS [id] name (seconds s / limit s): detail"
std::string format_result(const CriterionResult& result);

}  // namespace ginibrenet::validation
