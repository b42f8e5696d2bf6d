#include "dblie/report.hpp"

#include <sstream>

#include "json.hpp"

namespace dblie {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::budget: return "budget";
  }
  return "?";
}

void VerificationReport::absorb(const VerificationReport& sub, const std::string& prefix) {
  std::string tag = prefix.empty() ? sub.check : prefix;
  if (status == Status::pass && sub.status != Status::pass) {
    status = sub.status;
    counterexample = tag + ": " + sub.counterexample;
  }
  for (const auto& n : sub.notes) notes.push_back(tag + ": " + n);
}

std::string to_json_line(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["target"] = r.target;
  j["window"] = r.window;
  j["cutoff"] = r.cutoff;
  if (r.seed) {
    j["seed"] = *r.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["status"] = status_name(r.status);
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j.dump();
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << (r.status == Status::pass ? "PASS" : r.status == Status::fail ? "FAIL" : "BUDGET") << ' ' << r.check << ' '
     << r.target << " [window=" << r.window << " cutoff=" << r.cutoff;
  if (r.seed) os << " seed=" << *r.seed;
  if (r.elapsed_ms) os << " elapsed_ms=" << *r.elapsed_ms;
  os << "]\n";
  if (!r.counterexample.empty()) os << "  counterexample: " << r.counterexample << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace dblie
