#include "ncque/report.hpp"

namespace ncque {

bool VerificationReport::pass() const
{
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::merge(const VerificationReport& other)
{
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

const Check* VerificationReport::first_failure() const
{
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

nlohmann::json to_json(const VerificationReport& report)
{
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json j{{"name", c.name}, {"subject", c.subject}, {"pass", c.pass}};
    if (c.counterexample) j["counterexample"] = *c.counterexample;
    checks.push_back(std::move(j));
  }
  return {{"checks", std::move(checks)}, {"pass", report.pass()}};
}

std::string to_text(const VerificationReport& report)
{
  std::string out;
  for (const auto& c : report.checks) {
    out += c.pass ? "PASS  " : "FAIL  ";
    out += c.name + ": " + c.subject;
    if (c.counterexample) out += "\n      counterexample: " + *c.counterexample;
    out += "\n";
  }
  out += report.pass() ? "all checks passed\n" : "verification FAILED\n";
  return out;
}

}  // namespace ncque
