#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncque {

struct Check {
  std::string name;
  std::string subject;
  bool pass = true;
  std::optional<std::string> counterexample;
};

/// Outcome of a verification suite. Failures are data, not exceptions.
struct VerificationReport {
  std::vector<Check> checks;

  bool pass() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void merge(const VerificationReport& other);
  /// First failing check, if any.
  const Check* first_failure() const;
};

/// Accumulates many sub-checks into a single Check, keeping the first counterexample.
class CheckTally {
 public:
  CheckTally(std::string name, std::string subject) : check_{std::move(name), std::move(subject), true, {}} {}

  void record(bool ok, const std::string& where)
  {
    ++count_;
    if (!ok && check_.pass) {
      check_.pass = false;
      check_.counterexample = where;
    }
  }
  int count() const { return count_; }
  Check finish() const
  {
    Check c = check_;
    c.subject += " [" + std::to_string(count_) + " cases]";
    return c;
  }

 private:
  Check check_;
  int count_ = 0;
};

nlohmann::json to_json(const VerificationReport& report);
std::string to_text(const VerificationReport& report);

}  // namespace ncque
