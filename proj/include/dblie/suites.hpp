#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dblie/report.hpp"

namespace dblie {

struct SuiteOptions {
  std::uint64_t seed = 20190801;
  /// Smaller windows for smoke runs; acceptance always uses full size.
  bool quick = false;
};

struct SuiteResult {
  int criterion = 0;
  std::string title;
  std::vector<VerificationReport> reports;
  bool passed() const;
  /// "first failing check" or a count of passing checks.
  std::string summary() const;
};

/// Criteria 1..9.
SuiteResult run_suite(int criterion, const SuiteOptions& opts = {});
std::vector<SuiteResult> run_all_suites(const SuiteOptions& opts = {});

/// Turns an expected failure into a passing report that records the
/// counterexample, and an unexpected pass into a failure.
VerificationReport expect_failure(VerificationReport inner);

}  // namespace dblie
