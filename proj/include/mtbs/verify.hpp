#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtbs {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Exhaustive grid over all patterns of the given lengths with nonempty
// domain: at every 0-input the structured and brute-force block sensitivity
// agree exactly.
CheckResult check_oracle_equivalence(const std::vector<int>& lengths);

// Same grid: at every 1-input the brute-force block sensitivity is at most
// the pattern domain size.
CheckResult check_bs1_domain_bound(const std::vector<int>& lengths);

// Random patterns at the given lengths: every brute-force witness at a
// 0-input maps to a shift set none of whose 4-subsets has a balanced
// shifted copy in the pattern.
CheckResult check_no_four_set(const std::vector<int>& lengths, int patterns_per_length,
                              std::uint64_t seed);

// f = (Cyclic(n), "1" followed by stars) has s(f) = bs(f) = n.
CheckResult check_or_sanity(int n_min, int n_max);

enum class VerifyLevel { quick, full };

// The four suites above at reduced (quick) or full strength.
std::vector<CheckResult> run_verification_suites(VerifyLevel level);

}  // namespace mtbs
