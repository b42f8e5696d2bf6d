// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            all criteria
//   acceptance --verbose  also print every report
//   acceptance --jsonl F  write the full report of suites 1-9 to F

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dblie/suites.hpp"

namespace {

std::string serialize(const std::vector<dblie::SuiteResult>& suites) {
  std::ostringstream os;
  for (const auto& s : suites) {
    for (const auto& r : s.reports) os << s.criterion << "\t" << dblie::to_json_line(r) << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = false;
  std::string jsonl_path;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--verbose") == 0) {
      verbose = true;
    } else if (std::strcmp(argv[i], "--jsonl") == 0 && i + 1 < argc) {
      jsonl_path = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--verbose] [--jsonl FILE]\n";
      return 2;
    }
  }

  int failed = 0;
  std::vector<dblie::SuiteResult> first;
  for (int c = 1; c <= 9; ++c) {
    auto t0 = std::chrono::steady_clock::now();
    dblie::SuiteResult s;
    try {
      s = dblie::run_suite(c);
    } catch (const std::exception& e) {
      s.criterion = c;
      s.title = "suite " + std::to_string(c);
      dblie::VerificationReport r;
      r.check = "suite";
      r.target = s.title;
      r.fail(std::string("exception: ") + e.what());
      s.reports.push_back(r);
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    bool ok = s.passed();
    if (!ok) ++failed;
    std::cout << "criterion " << c << " " << (ok ? "PASS" : "FAIL") << "  " << s.title << ": " << s.summary() << " (" << ms
              << " ms)" << std::endl;
    for (const auto& r : s.reports) {
      if (verbose || !r.passed()) std::cout << dblie::to_text(r);
    }
    first.push_back(std::move(s));
  }

  std::string a = serialize(first);
  if (!jsonl_path.empty()) std::ofstream(jsonl_path) << a;
  std::string b;
  try {
    b = serialize(dblie::run_all_suites());
  } catch (const std::exception& e) {
    b = std::string("exception: ") + e.what();
  }
  bool same = a == b;
  if (!same) ++failed;
  std::cout << "criterion 10 " << (same ? "PASS" : "FAIL") << "  determinism: " << a.size() << " bytes of report, "
            << (same ? "identical" : "different") << " across two runs" << std::endl;

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
