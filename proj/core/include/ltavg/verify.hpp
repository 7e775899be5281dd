#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ltavg::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The cross-module invariant suite: class-number equivalence, orbit
// sizes, the isomorphism criterion, character identities, the
// Polya-Vinogradov inequality, and residue-path/brute-force equality.
// max_p bounds the primes exercised.
std::vector<CheckResult> verify_all(std::int64_t max_p);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ltavg::verify
