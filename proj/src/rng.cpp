#include "mtbs/rng.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace mtbs {

Block random_block(SplitRng& rng, int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("random_block: size out of range");
  // Floyd's subset sampling: uniform over size-m subsets, O(m) draws.
  std::set<int> chosen;
  for (int j = n - m; j < n; ++j) {
    int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return Block(std::vector<int>(chosen.begin(), chosen.end()));
}

Pattern random_pattern(SplitRng& rng, int n, int dom_size) {
  if (dom_size < 1 || dom_size > n) {
    throw std::invalid_argument("random_pattern: domain size out of range");
  }
  Block dom = random_block(rng, n, dom_size);
  std::vector<Symbol> symbols(static_cast<std::size_t>(n), Symbol::star);
  for (int i : dom.indices()) {
    symbols[static_cast<std::size_t>(i)] =
        rng.next_u64() & 1 ? Symbol::one : Symbol::zero;
  }
  return Pattern(std::move(symbols));
}

BitString random_bitstring(SplitRng& rng, int n) {
  if (n <= 0) throw std::invalid_argument("random_bitstring: length must be positive");
  std::string text(static_cast<std::size_t>(n), '0');
  for (char& c : text) c = rng.next_u64() & 1 ? '1' : '0';
  return BitString(text);
}

}  // namespace mtbs
