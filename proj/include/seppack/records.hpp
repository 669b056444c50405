#pragma once

#include <string>
#include <vector>

#include "seppack/core.hpp"

namespace sep {

enum class Semantics { exact, one_sided_certified, heuristic };
enum class Verdict { pass, fail, not_applicable, informational };

// One evaluated inequality. margin is signed per direction (rhs - lhs for
// "<=", lhs - rhs for ">="); pass <=> margin >= -tolerance.
struct InequalityRecord {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  std::string direction;  // "<=" or ">="
  double margin = 0;
  Verdict verdict = Verdict::pass;
  Semantics semantics = Semantics::exact;
  std::string inputs_digest;
  std::string note;  // substitution policy, endpoint used, caveats
};

std::string semantics_name(Semantics s);
std::string verdict_name(Verdict v);

// FNV-1a over a canonical rendering of the check inputs; identical inputs
// yield identical digests so records are reproducible.
class Digest {
 public:
  Digest& add(const std::string& s);
  Digest& add(double v);
  Digest& add(int v);
  std::string hex() const;

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

InequalityRecord make_record(std::string name, double lhs, double rhs, const std::string& dir,
                             Semantics sem, double tolerance, std::string digest,
                             std::string note = "");

}  // namespace sep
