#include "mtbs/dependency_bound.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mtbs {

namespace {

// Positive pairwise differences of A; |i-j| lies here iff A+i and A+j
// overlap.
std::vector<int> positive_gaps(const FourSet& a) {
  std::set<int> gaps;
  const std::vector<int>& e = a.indices();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) gaps.insert(e[j] - e[i]);
  }
  return {gaps.begin(), gaps.end()};
}

void require_four_set_fits(const FourSet& a, int k) {
  if (a.indices().back() >= k) {
    throw std::invalid_argument("4-set does not fit within {0,...," + std::to_string(k - 1) +
                                "}");
  }
}

}  // namespace

double pairwise_joint_expectation(const FourSet& a, int i, int j, double rho) {
  if (rho <= 0.0 || 2.0 * rho > 1.0) {
    throw std::invalid_argument("per-value probability must lie in (0, 1/2]");
  }
  const int gap = std::abs(i - j);
  const std::vector<int> gaps = positive_gaps(a);
  if (gap == 0 || !std::binary_search(gaps.begin(), gaps.end(), gap)) {
    throw std::invalid_argument("translates at indices " + std::to_string(i) + " and " +
                                std::to_string(j) + " do not overlap");
  }

  std::set<int> union_set;
  for (int e : a.indices()) {
    union_set.insert(e + i);
    union_set.insert(e + j);
  }
  const std::vector<int> positions(union_set.begin(), union_set.end());
  const int u = static_cast<int>(positions.size());
  if (u < 5 || u > 7) {
    throw std::logic_error("overlapping translate union has unexpected size " +
                           std::to_string(u));
  }

  int m = 0;
  for (int bits = 0; bits < (1 << u); ++bits) {
    const auto value_at = [&](int position) {
      const auto it = std::lower_bound(positions.begin(), positions.end(), position);
      const int slot = static_cast<int>(it - positions.begin());
      return (bits >> slot) & 1;
    };
    int ones_i = 0;
    int ones_j = 0;
    for (int e : a.indices()) {
      ones_i += value_at(e + i);
      ones_j += value_at(e + j);
    }
    if (ones_i == 2 && ones_j == 2) ++m;
  }
  if (m > 18) {
    throw std::logic_error("balanced assignment count " + std::to_string(m) + " exceeds 18");
  }
  return m * std::pow(rho, u);
}

JansonStats janson_stats(int k, const FourSet& a) {
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(k);
  require_four_set_fits(a, k);

  JansonStats stats;
  stats.k = k;
  stats.rho = spec.rho;
  stats.q = 6.0 * std::pow(spec.rho, 4);
  stats.mu = static_cast<double>(k) * stats.q;

  const std::vector<int> gaps = positive_gaps(a);
  int max_degree = 0;
  for (int i = 0; i < k; ++i) {
    int degree = 0;
    for (int d : gaps) {
      if (i + d < k) ++degree;
      if (i - d >= 0) ++degree;
    }
    max_degree = std::max(max_degree, degree);
  }
  stats.delta_max = stats.q * max_degree;

  double big_delta = 0.0;
  for (int d : gaps) {
    big_delta += static_cast<double>(k - d) * pairwise_joint_expectation(a, 0, d, spec.rho);
  }
  stats.big_delta = big_delta;
  stats.bound = std::exp(-stats.mu + stats.big_delta * std::exp(2.0 * stats.delta_max));
  return stats;
}

namespace {

std::uint64_t count_zero_trials(const CoveringPatternSpec& spec, const FourSet& a,
                                std::uint64_t trials, SplitRng rng) {
  const std::vector<int>& e = a.indices();
  std::uint64_t zeros = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::vector<Symbol> window = sample_window_symbols(spec, rng);
    bool any_balanced = false;
    for (int i = 0; i < spec.k && !any_balanced; ++i) {
      int defined = 0;
      int zero_values = 0;
      for (int base : e) {
        const Symbol s = window[static_cast<std::size_t>(base + i)];
        if (s == Symbol::star) break;
        ++defined;
        zero_values += s == Symbol::zero ? 1 : 0;
      }
      any_balanced = defined == 4 && zero_values == 2;
    }
    if (!any_balanced) ++zeros;
  }
  return zeros;
}

}  // namespace

MonteCarloResult monte_carlo_zero_probability(int k, const FourSet& a, std::uint64_t trials,
                                              std::uint64_t seed, int jobs) {
  if (trials == 0) throw std::invalid_argument("at least one trial required");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(k);
  require_four_set_fits(a, k);
  const JansonStats stats = janson_stats(k, a);

  const int workers = static_cast<int>(std::min<std::uint64_t>(
      static_cast<std::uint64_t>(jobs), trials));
  std::vector<std::uint64_t> zero_counts(static_cast<std::size_t>(workers), 0);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = trials * static_cast<std::uint64_t>(w) / workers;
    const std::uint64_t hi = trials * static_cast<std::uint64_t>(w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      zero_counts[static_cast<std::size_t>(w)] = count_zero_trials(
          spec, a, hi - lo, SplitRng::substream(seed, static_cast<std::uint64_t>(w)));
    });
  }
  for (std::thread& t : threads) t.join();

  std::uint64_t zero_count = 0;
  for (std::uint64_t c : zero_counts) zero_count += c;

  MonteCarloResult result;
  result.trials = trials;
  result.zero_count = zero_count;
  result.estimate = static_cast<double>(zero_count) / static_cast<double>(trials);
  result.standard_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
  result.bound = stats.bound;
  result.verdict = result.estimate <= result.bound + 3.0 * result.standard_error;
  return result;
}

}  // namespace mtbs
