#pragma once

#include <cstdint>

#include "mtbs/upper_bound.hpp"

namespace mtbs {

// Exact moment statistics of the translate family I_i = [A+i fully defined
// and balanced], i in {0,...,k-1}, over the random window pattern. Two
// translates are dependent exactly when they overlap, i.e. when |i-j| is a
// positive pairwise difference of A.
struct JansonStats {
  int k = 0;
  double rho = 0.0;
  double q = 0.0;          // per-index expectation, 6*rho^4
  double mu = 0.0;         // k * q
  double delta_max = 0.0;  // max_i sum of q over neighbors of i
  double big_delta = 0.0;  // sum of E[I_i I_j] over unordered dependent pairs
  double bound = 0.0;      // exp(-mu + big_delta * exp(2 * delta_max))
};

JansonStats janson_stats(int k, const FourSet& a);

// Exact E[I_i I_j] = m * rho^|(A+i) u (A+j)| with m the number of 0/1
// assignments of the union making both translates balanced, enumerated
// exhaustively. Requires the translates to overlap; m never exceeds 18 and
// the union never has fewer than 5 positions.
double pairwise_joint_expectation(const FourSet& a, int i, int j, double rho);

struct MonteCarloResult {
  double estimate = 0.0;        // fraction of trials with no balanced translate
  double standard_error = 0.0;  // binomial
  double bound = 0.0;           // from janson_stats
  bool verdict = false;         // estimate <= bound + 3 * standard_error
  std::uint64_t trials = 0;
  std::uint64_t zero_count = 0;
};

// Samples the window per the covering-pattern distribution and estimates
// Pr[sum_i I_i = 0]. Trials partition into `jobs` contiguous chunks, one
// seed sub-stream each, so the result is deterministic for a fixed
// (seed, jobs) pair.
MonteCarloResult monte_carlo_zero_probability(int k, const FourSet& a, std::uint64_t trials,
                                              std::uint64_t seed, int jobs = 1);

}  // namespace mtbs
