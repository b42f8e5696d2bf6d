#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dblie {

enum class Status : std::uint8_t { pass, fail, budget };

const char* status_name(Status s);

/// Outcome of one exact check. A failing report carries a counterexample
/// that names the inputs and both evaluated sides.
struct VerificationReport {
  std::string check;
  std::string target;
  std::int64_t window = 0;
  std::int64_t cutoff = 0;
  std::optional<std::uint64_t> seed;
  Status status = Status::pass;
  std::string counterexample;
  std::vector<std::string> notes;
  std::optional<double> elapsed_ms;

  bool passed() const { return status == Status::pass; }
  void fail(std::string witness) {
    if (status == Status::pass) {
      status = Status::fail;
      counterexample = std::move(witness);
    }
  }
  void note(std::string text) { notes.push_back(std::move(text)); }
  /// Folds a sub-check into this report: first failure wins, notes are kept.
  void absorb(const VerificationReport& sub, const std::string& prefix = {});
};

/// One JSON object per line, keys in a fixed order.
std::string to_json_line(const VerificationReport& r);
/// "PASS check target [window=.. cutoff=..]" plus indented counterexample/notes.
std::string to_text(const VerificationReport& r);

}  // namespace dblie
