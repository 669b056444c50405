#include "seppack/records.hpp"

#include <cmath>
#include <cstdio>

namespace sep {

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::exact: return "exact";
    case Semantics::one_sided_certified: return "one-sided-certified";
    case Semantics::heuristic: return "heuristic";
  }
  return "?";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not-applicable";
    case Verdict::informational: return "informational";
  }
  return "?";
}

Digest& Digest::add(const std::string& s) {
  for (unsigned char c : s) {
    h_ ^= c;
    h_ *= 0x100000001b3ULL;
  }
  h_ ^= 0x1f;
  h_ *= 0x100000001b3ULL;
  return *this;
}

Digest& Digest::add(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return add(std::string(buf));
}

Digest& Digest::add(int v) { return add(std::to_string(v)); }

std::string Digest::hex() const {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

InequalityRecord make_record(std::string name, double lhs, double rhs, const std::string& dir,
                             Semantics sem, double tolerance, std::string digest,
                             std::string note) {
  InequalityRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.direction = dir;
  if (dir == "==")
    r.margin = -std::abs(lhs - rhs);
  else
    r.margin = dir == "<=" ? rhs - lhs : lhs - rhs;
  r.verdict = r.margin >= -tolerance ? Verdict::pass : Verdict::fail;
  r.semantics = sem;
  r.inputs_digest = std::move(digest);
  r.note = std::move(note);
  return r;
}

}  // namespace sep
