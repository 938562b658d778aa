#include "mtbs/upper_bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mtbs {

CoveringPatternSpec CoveringPatternSpec::for_k(int k, double dom_bound_constant) {
  if (k < 68) {
    throw std::invalid_argument("k below minimum 68: 2*(ln k/k)^(1/4) must be at most 1");
  }
  if (dom_bound_constant <= 0.0) {
    throw std::invalid_argument("dom_bound_constant must be positive");
  }
  CoveringPatternSpec spec;
  spec.k = k;
  spec.rho = std::pow(std::log(static_cast<double>(k)) / k, 0.25);
  spec.dom_bound_constant = dom_bound_constant;
  return spec;
}

double CoveringPatternSpec::dom_bound() const {
  return dom_bound_constant * std::pow(static_cast<double>(k), 0.75) *
         std::pow(std::log(static_cast<double>(k)), 0.25);
}

FourSet::FourSet(Block elements, int k) : elements_(std::move(elements)) {
  if (elements_.size() != 4) {
    throw std::invalid_argument("4-set must hold exactly 4 indices");
  }
  if (elements_.indices().back() >= k) {
    throw std::invalid_argument("4-set index " + std::to_string(elements_.indices().back()) +
                                " outside {0,...," + std::to_string(k - 1) + "}");
  }
}

std::vector<Symbol> sample_window_symbols(const CoveringPatternSpec& spec, SplitRng& rng) {
  std::vector<Symbol> symbols(static_cast<std::size_t>(spec.window_length()), Symbol::star);
  for (Symbol& s : symbols) {
    const double u = rng.unit();
    if (u < spec.rho) {
      s = Symbol::zero;
    } else if (u < 2.0 * spec.rho) {
      s = Symbol::one;
    }
  }
  return symbols;
}

Pattern sample_pattern(const CoveringPatternSpec& spec, SplitRng& rng, int n) {
  if (n < spec.window_length()) {
    throw std::invalid_argument("pattern length must cover the window of " +
                                std::to_string(spec.window_length()) + " positions");
  }
  std::vector<Symbol> symbols = sample_window_symbols(spec, rng);
  symbols.resize(static_cast<std::size_t>(n), Symbol::star);
  return Pattern(std::move(symbols));
}

Pattern sample_pattern(const CoveringPatternSpec& spec, std::uint64_t seed, int n) {
  SplitRng rng(seed);
  return sample_pattern(spec, rng, n);
}

namespace {

// Pattern restricted to the window, as flat arrays for the hot loops.
struct WindowView {
  int window_len = 0;
  std::vector<std::int8_t> defined;
  std::vector<std::int8_t> value;
};

WindowView window_view(const Pattern& p, int k) {
  const int w = 2 * k - 1;
  if (!p.domain().empty() && p.domain().back() > w - 1) {
    throw std::invalid_argument("pattern support exceeds the window of " + std::to_string(w) +
                                " positions");
  }
  WindowView v;
  v.window_len = w;
  v.defined.assign(static_cast<std::size_t>(w), 0);
  v.value.assign(static_cast<std::size_t>(w), 0);
  for (int d : p.domain()) {
    v.defined[static_cast<std::size_t>(d)] = 1;
    v.value[static_cast<std::size_t>(d)] = static_cast<std::int8_t>(p.value(d));
  }
  return v;
}

std::optional<int> balanced_offset(const WindowView& v, int a0, int a1, int a2, int a3) {
  for (int u = -a0; a3 + u < v.window_len; ++u) {
    const int i0 = a0 + u;
    const int i1 = a1 + u;
    const int i2 = a2 + u;
    const int i3 = a3 + u;
    if (!(v.defined[i0] && v.defined[i1] && v.defined[i2] && v.defined[i3])) continue;
    if (v.value[i0] + v.value[i1] + v.value[i2] + v.value[i3] == 2) return u;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> has_balanced_copy(const Pattern& p, const FourSet& a, int k) {
  if (a.indices().back() >= k) {
    throw std::invalid_argument("4-set does not fit within {0,...," + std::to_string(k - 1) +
                                "}");
  }
  const WindowView v = window_view(p, k);
  const std::vector<int>& e = a.indices();
  return balanced_offset(v, e[0], e[1], e[2], e[3]);
}

namespace {

CoverageCheckResult coverage_check_naive(const WindowView& v, int k) {
  for (int a = 0; a < k - 3; ++a) {
    for (int b = a + 1; b < k - 2; ++b) {
      for (int c = b + 1; c < k - 1; ++c) {
        for (int d = c + 1; d < k; ++d) {
          if (!balanced_offset(v, a, b, c, d)) {
            return {false, FourSet(Block({a, b, c, d}), k)};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

CoverageCheckResult coverage_check_indexed(const WindowView& v, int k,
                                           std::uint64_t enumeration_cap) {
  if (k > 1024) {
    throw resource_limit_error("indexed coverage check: k^3 triple table too large for k = " +
                               std::to_string(k));
  }
  const std::size_t kk = static_cast<std::size_t>(k);
  std::vector<std::uint64_t> triples((kk * kk * kk + 63) / 64, 0);
  const auto triple_index = [kk](int t1, int t2, int t3) {
    return (static_cast<std::size_t>(t1) * kk + static_cast<std::size_t>(t2)) * kk +
           static_cast<std::size_t>(t3);
  };

  std::vector<int> dom;
  std::vector<int> val;
  for (int i = 0; i < v.window_len; ++i) {
    if (v.defined[static_cast<std::size_t>(i)]) {
      dom.push_back(i);
      val.push_back(v.value[static_cast<std::size_t>(i)]);
    }
  }

  const int m = static_cast<int>(dom.size());
  std::uint64_t steps = 0;
  for (int i = 0; i < m; ++i) {
    const int d1 = dom[i];
    const int s1 = val[i];
    for (int j = i + 1; j < m && dom[j] - d1 <= k - 1; ++j) {
      const int s2 = s1 + val[j];
      for (int l = j + 1; l < m && dom[l] - d1 <= k - 1; ++l) {
        const int s3 = s2 + val[l];
        for (int h = l + 1; h < m && dom[h] - d1 <= k - 1; ++h) {
          if (++steps > enumeration_cap) {
            throw resource_limit_error("indexed coverage check: enumeration exceeded " +
                                       std::to_string(enumeration_cap) + " steps");
          }
          if (s3 + val[h] == 2) {
            const std::size_t idx = triple_index(dom[j] - d1, dom[l] - d1, dom[h] - d1);
            triples[idx >> 6] |= std::uint64_t{1} << (idx & 63);
          }
        }
      }
    }
  }

  for (int a = 0; a < k - 3; ++a) {
    for (int b = a + 1; b < k - 2; ++b) {
      for (int c = b + 1; c < k - 1; ++c) {
        for (int d = c + 1; d < k; ++d) {
          const std::size_t idx = triple_index(b - a, c - a, d - a);
          if (!((triples[idx >> 6] >> (idx & 63)) & 1)) {
            return {false, FourSet(Block({a, b, c, d}), k)};
          }
        }
      }
    }
  }
  return {true, std::nullopt};
}

}  // namespace

CoverageCheckResult full_coverage_check(const Pattern& p, int k, CoverageAlgorithm algorithm,
                                        std::uint64_t enumeration_cap) {
  if (k < 4) throw std::invalid_argument("coverage check needs k >= 4");
  const WindowView v = window_view(p, k);
  return algorithm == CoverageAlgorithm::naive
             ? coverage_check_naive(v, k)
             : coverage_check_indexed(v, k, enumeration_cap);
}

PatternConstructionReport construct_covering_pattern(const CoveringPatternSpec& spec,
                                                     std::uint64_t seed, int max_attempts) {
  if (max_attempts < 0) throw std::invalid_argument("max_attempts must be non-negative");
  const double bound = spec.dom_bound();
  int dom_failures = 0;
  int coverage_failures = 0;
  std::optional<FourSet> last_uncovered;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    SplitRng rng = SplitRng::substream(seed, static_cast<std::uint64_t>(attempt));
    Pattern p = sample_pattern(spec, rng, spec.window_length());
    if (static_cast<double>(p.domain_size()) > bound) {
      ++dom_failures;
      continue;
    }
    CoverageCheckResult check = full_coverage_check(p, spec.k, CoverageAlgorithm::indexed);
    if (!check.ok) {
      ++coverage_failures;
      last_uncovered = check.counterexample;
      continue;
    }
    const int dom_size = p.domain_size();
    return PatternConstructionReport{spec.k,   spec.rho,     std::move(p),
                                     attempt,  dom_size,     bound,
                                     true,     std::nullopt, seed};
  }
  std::ostringstream msg;
  msg << "covering pattern: no acceptable sample in " << max_attempts << " attempts ("
      << dom_failures << " domain-size rejections, " << coverage_failures
      << " coverage rejections";
  if (last_uncovered) msg << "; last uncovered 4-set {" << last_uncovered->elements().text() << "}";
  msg << ")";
  throw construction_failure(msg.str(), max_attempts);
}

int k_for_length(int n) {
  if (n < 2) throw std::invalid_argument("k_for_length needs n >= 2");
  const double value = std::pow(static_cast<double>(n), 4.0 / 7.0) /
                       std::pow(std::log(static_cast<double>(n)), 1.0 / 7.0);
  return static_cast<int>(std::ceil(value));
}

int min_supported_length() {
  static const int min_n = [] {
    for (int n = 2; n <= 1'000'000; ++n) {
      if (k_for_length(n) >= 68) return n;
    }
    throw std::logic_error("min_supported_length: no viable n found");
  }();
  return min_n;
}

Pattern embed_in_length(const Pattern& p, int n) {
  if (n < p.length()) {
    throw std::invalid_argument("embedding length is smaller than the pattern");
  }
  std::vector<Symbol> symbols;
  symbols.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < p.length(); ++i) symbols.push_back(p.symbol(i));
  symbols.resize(static_cast<std::size_t>(n), Symbol::star);
  return Pattern(std::move(symbols));
}

LowBsBuild build_low_bs_function(int n, std::uint64_t seed, int max_attempts) {
  const int k = k_for_length(n);
  if (k < 68) {
    throw std::invalid_argument("n = " + std::to_string(n) + " gives k = " + std::to_string(k) +
                                " below the minimum 68; the smallest supported n is " +
                                std::to_string(min_supported_length()));
  }
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(k);
  if (n < spec.window_length()) {
    throw std::invalid_argument("n must cover the window of " +
                                std::to_string(spec.window_length()) + " positions");
  }
  PatternConstructionReport report = construct_covering_pattern(spec, seed, max_attempts);
  MintermFunction function(GroupSpec::cyclic(n), embed_in_length(report.pattern, n));
  return LowBsBuild{k, std::move(report), std::move(function)};
}

WindowFourSet dense_interval_4set(const Block& s, int k, int n) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("dense interval: need 1 <= k <= n");
  if (s.empty() || s.indices().back() >= n) {
    throw std::invalid_argument("dense interval: set must be nonempty within {0,...,n-1}");
  }
  if (static_cast<std::int64_t>(s.size()) * k < std::int64_t{4} * n) {
    throw std::invalid_argument("dense interval: |s| * k >= 4n required for existence");
  }

  std::vector<std::uint8_t> member(static_cast<std::size_t>(n), 0);
  for (int e : s.indices()) member[static_cast<std::size_t>(e)] = 1;

  int count = 0;
  for (int q = 0; q < k; ++q) count += member[static_cast<std::size_t>(q)];
  for (int a = 0; a < n; ++a) {
    if (count >= 4) {
      std::vector<int> normalized;
      for (int q = a; q < a + k && static_cast<int>(normalized.size()) < 4; ++q) {
        if (member[static_cast<std::size_t>(q % n)]) normalized.push_back(q - a);
      }
      return WindowFourSet{FourSet(Block(std::move(normalized)), k), a};
    }
    count -= member[static_cast<std::size_t>(a)];
    count += member[static_cast<std::size_t>((a + k) % n)];
  }
  throw std::logic_error("dense interval: no window found despite the averaging guarantee");
}

namespace {

bool balanced_cyclic_copy_exists(const Pattern& p, const std::array<int, 4>& a) {
  const int n = p.length();
  for (int u = 0; u < n; ++u) {
    int zeros = 0;
    bool all_defined = true;
    for (int e : a) {
      int i = e + u;
      i %= n;
      if (!p.defined(i)) {
        all_defined = false;
        break;
      }
      zeros += p.value(i) == 0 ? 1 : 0;
    }
    if (all_defined && zeros == 2) return true;
  }
  return false;
}

}  // namespace

Block witness_to_shift_set(const MintermFunction& f, const BitString& x,
                           const std::vector<Block>& blocks, int conclusion_cap) {
  if (!f.group().is_cyclic()) {
    throw std::invalid_argument("shift set extraction needs a cyclic group");
  }
  if (f.eval(x) != 0) {
    throw std::invalid_argument("shift set extraction needs a 0-input");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[i].intersects(blocks[j])) {
        throw std::invalid_argument("shift set extraction: blocks intersect");
      }
    }
  }

  const int n = f.length();
  std::vector<int> shift_indices;
  shift_indices.reserve(blocks.size());
  for (const Block& b : blocks) {
    const BitString y = flip(x, b);
    if (f.eval(y) != 1) {
      throw std::invalid_argument("shift set extraction: block does not flip the value to 1");
    }
    int smallest = n;
    for (const Permutation& sigma : f.matching_shifts(y)) {
      smallest = std::min(smallest, sigma.cyclic_offset());
    }
    shift_indices.push_back(smallest);
  }

  std::vector<int> s;
  s.reserve(shift_indices.size());
  for (int j : shift_indices) s.push_back((n - j) % n);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::logic_error("shift set extraction: duplicate shift indices for disjoint blocks");
  }

  const int m = static_cast<int>(s.size());
  if (m <= conclusion_cap) {
    for (int a = 0; a < m - 3; ++a) {
      for (int b = a + 1; b < m - 2; ++b) {
        for (int c = b + 1; c < m - 1; ++c) {
          for (int d = c + 1; d < m; ++d) {
            if (balanced_cyclic_copy_exists(f.pattern(), {s[a], s[b], s[c], s[d]})) {
              throw std::logic_error(
                  "shift set extraction: balanced shifted copy of a 4-subset of the shift set");
            }
          }
        }
      }
    }
  }
  return Block(std::move(s));
}

}  // namespace mtbs
