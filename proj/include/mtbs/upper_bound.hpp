#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtbs/functions.hpp"
#include "mtbs/rng.hpp"

namespace mtbs {

// Parameters of the random covering pattern: independent entries on the
// window {0,...,2k-2} take value 0 with probability rho and 1 with
// probability rho, where rho = (ln k / k)^(1/4). Requires 2*rho <= 1,
// which holds exactly for k >= 68.
struct CoveringPatternSpec {
  int k = 0;
  double rho = 0.0;
  double dom_bound_constant = 4.5;

  static CoveringPatternSpec for_k(int k, double dom_bound_constant = 4.5);

  int window_length() const { return 2 * k - 1; }
  // Acceptance bound on |dom(p)|: c * k^(3/4) * (ln k)^(1/4).
  double dom_bound() const;
};

// Four distinct indices within {0,...,k-1}.
class FourSet {
 public:
  FourSet(Block elements, int k);

  const Block& elements() const { return elements_; }
  const std::vector<int>& indices() const { return elements_.indices(); }

  bool operator==(const FourSet& other) const { return elements_ == other.elements_; }

 private:
  Block elements_;
};

// One independent draw per window position: 0 or 1 with probability rho
// each, undefined otherwise.
std::vector<Symbol> sample_window_symbols(const CoveringPatternSpec& spec, SplitRng& rng);

// Random pattern of length n >= 2k-1 supported on the window.
Pattern sample_pattern(const CoveringPatternSpec& spec, SplitRng& rng, int n);
Pattern sample_pattern(const CoveringPatternSpec& spec, std::uint64_t seed, int n);

// Smallest integer u (possibly negative) with a+u inside the window and
// defined in p for all a in A, and p equal to 0 on exactly two of them.
// The window check ignores wraparound, so the result does not depend on the
// length p is embedded in.
std::optional<int> has_balanced_copy(const Pattern& p, const FourSet& a, int k);

enum class CoverageAlgorithm { naive, indexed };

struct CoverageCheckResult {
  bool ok = false;
  // Lexicographically least uncovered 4-set when !ok.
  std::optional<FourSet> counterexample;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000'000;

// Checks that every 4-set within {0,...,k-1} has a balanced shifted copy in
// p. naive tries every C(k,4) 4-set directly; indexed enumerates the
// balanced 4-subsets of dom(p) with span <= k-1 and records their
// normalized difference triples, which a 4-set is covered by exactly when
// its own triple appears. Both algorithms report the same verdict and the
// same counterexample.
CoverageCheckResult full_coverage_check(const Pattern& p, int k, CoverageAlgorithm algorithm,
                                        std::uint64_t enumeration_cap = kDefaultEnumerationCap);

struct PatternConstructionReport {
  int k = 0;
  double rho = 0.0;
  Pattern pattern;
  int attempts = 0;
  int dom_size = 0;
  double bound = 0.0;  // dom-size acceptance bound
  bool coverage_verified = false;
  std::optional<FourSet> failing_4set;
  std::uint64_t seed = 0;
};

// Rejection loop: sample until the domain is small enough and every 4-set
// is covered. Throws construction_failure with per-criterion failure counts
// when max_attempts is exhausted.
PatternConstructionReport construct_covering_pattern(const CoveringPatternSpec& spec,
                                                     std::uint64_t seed, int max_attempts);

// Coverage parameter for a target length: k = ceil(n^(4/7) / (ln n)^(1/7)).
int k_for_length(int n);
// Smallest n whose k_for_length reaches the minimum viable 68.
int min_supported_length();

// p extended to length n with undefined positions.
Pattern embed_in_length(const Pattern& p, int n);

struct LowBsBuild {
  int k = 0;
  PatternConstructionReport report;
  MintermFunction function;
};

// Cyclic minterm function on n positions whose pattern is a verified
// covering pattern at k = k_for_length(n), embedded at offset 0.
LowBsBuild build_low_bs_function(int n, std::uint64_t seed, int max_attempts = 200);

struct WindowFourSet {
  FourSet four_set;  // normalized into {0,...,k-1}
  int offset = 0;    // window start a; elements live at (offset + e) mod n
};

// First circular window [a, a+k-1] holding at least 4 elements of s, which
// exists whenever |s| * k >= 4n by averaging; returns 4 of its elements
// normalized by the window start.
WindowFourSet dense_interval_4set(const Block& s, int k, int n);

// Maps a verified witness at a 0-input to the shift set S = {-j mod n} of
// the smallest shift index matching each flipped block. The indices are
// distinct because the blocks are disjoint; S is then checked (up to the
// cap) to contain no 4-subset with a balanced shifted copy in the pattern,
// here with cyclic wraparound. Violations raise logic_error.
Block witness_to_shift_set(const MintermFunction& f, const BitString& x,
                           const std::vector<Block>& blocks, int conclusion_cap = 40);

}  // namespace mtbs
