// Runs acceptance criteria 1-11 at full budget, then the end-to-end check 12,
// printing one PASS/FAIL line per criterion. Exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ginibrenet/validation.hpp"

namespace {

constexpr double kQuickLimitSeconds = 300.0;
constexpr double kFullLimitSeconds = 45.0 * 60.0;

struct Subprocess {
  int status = -1;
  double seconds = 0.0;
  std::string output;
};

Subprocess run(const std::string& cmd) {
  Subprocess out;
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out.output += buf;
  const int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

int main() {
  using namespace ginibrenet::validation;
  SuiteOptions opts;
  opts.quick = false;
  opts.on_result = [](const CriterionResult& r) { std::cout << format_result(r) << std::endl; };

  const auto start = std::chrono::steady_clock::now();
  const auto results = run_suite(opts);
  const double full_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool all_passed = true;
  for (const auto& r : results) all_passed = all_passed && r.passed;

  const auto quick = run(std::string(GINIBRENET_CLI) + " validate --quick");
  const bool quick_ok = quick.status == 0 && quick.seconds <= kQuickLimitSeconds;
  const bool full_ok = all_passed && full_seconds <= kFullLimitSeconds;
  const bool e2e = quick_ok && full_ok;

  std::ostringstream detail;
  detail << "validate --quick exit " << quick.status << " in " << quick.seconds << " s (limit "
         << kQuickLimitSeconds << " s); full suite " << (all_passed ? "passed" : "had failures")
         << " in " << full_seconds << " s (limit " << kFullLimitSeconds << " s)";
  std::cout << (e2e ? "PASS" : "FAIL") << " [12] end-to-end validation: " << detail.str()
            << std::endl;
  if (!quick_ok) std::cout << "--- validate --quick output ---\n" << quick.output;

  return all_passed && e2e ? 0 : 1;
}
