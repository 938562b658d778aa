#include "mtbs/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "mtbs/rng.hpp"

namespace mtbs {

namespace {

// ceil(n^(3/7) / m) computed exactly: ceil(x/m) = ceil(ceil(x)/m) for real x
// and integer m >= 1.
int ceil_pow_3_7_div(int n, int m) {
  const int c = ceil_pow_3_7(n);
  return (c + m - 1) / m;
}

std::map<int, int> count_coverage(const std::vector<Permutation>& elements, const Block& b) {
  std::map<int, int> coverage;
  for (const Permutation& sigma : elements) {
    for (int d : b.indices()) ++coverage[sigma.image(d)];
  }
  return coverage;
}

Permutation draw_element(const GroupSpec& g, const std::vector<Permutation>& pool,
                         SplitRng& rng) {
  if (g.is_cyclic()) {
    return Permutation::cyclic(g.length(), static_cast<int>(rng.below(g.length())));
  }
  return pool[static_cast<std::size_t>(rng.below(pool.size()))];
}

}  // namespace

ShiftSelection ShiftSelection::from_elements(std::vector<Permutation> elements,
                                             Block base_block) {
  ShiftSelection sel;
  sel.coverage = count_coverage(elements, base_block);
  for (const auto& [index, count] : sel.coverage) {
    if (count > 3) {
      throw std::invalid_argument("shift selection: index " + std::to_string(index) +
                                  " covered " + std::to_string(count) + " times (limit 3)");
    }
  }
  sel.t0_sampled = static_cast<int>(elements.size());
  sel.elements = std::move(elements);
  sel.base_block = std::move(base_block);
  sel.attempts_used = 0;
  sel.meets_size_threshold = true;
  return sel;
}

ShiftSelection select_low_overlap_shifts(const GroupSpec& g, const Block& b,
                                         std::uint64_t seed, int max_retries, double slack) {
  const int n = g.length();
  if (b.empty() || b.indices().back() >= n) {
    throw std::invalid_argument("shift selection: block must be nonempty within the index range");
  }
  if (b.size() > floor_pow_3_7(n)) {
    throw std::invalid_argument("shift selection: block size " + std::to_string(b.size()) +
                                " exceeds n^(3/7); use heavy_pattern_witness");
  }
  if (!is_transitive(g)) {
    throw std::invalid_argument("shift selection: group is not transitive");
  }
  if (max_retries < 1) throw std::invalid_argument("shift selection: max_retries must be >= 1");

  std::vector<Permutation> pool;
  if (!g.is_cyclic()) pool = enumerate_group(g);

  const int t0 = ceil_pow_3_7(n);
  // Resample when bad_count >= slack * n^(3/7) / 12; for slack 1 this is the
  // exact integer comparison bad_count >= ceil(n^(3/7) / 12).
  const int exact_bad_limit = ceil_pow_3_7_div(n, 12);
  const double real_pow = std::pow(static_cast<double>(n), 3.0 / 7.0);

  int terrible_rejections = 0;
  int bad_rejections = 0;
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    SplitRng rng = SplitRng::substream(seed, static_cast<std::uint64_t>(attempt));
    std::vector<Permutation> sampled;
    sampled.reserve(static_cast<std::size_t>(t0));
    for (int i = 0; i < t0; ++i) sampled.push_back(draw_element(g, pool, rng));

    const std::map<int, int> coverage = count_coverage(sampled, b);
    bool terrible = false;
    std::set<int> bad;
    for (const auto& [index, count] : coverage) {
      if (count >= 7) terrible = true;
      if (count >= 4) bad.insert(index);
    }
    if (terrible) {
      ++terrible_rejections;
      continue;
    }
    const bool too_many_bad =
        slack == 1.0 ? static_cast<int>(bad.size()) >= exact_bad_limit
                     : static_cast<double>(bad.size()) >= slack * real_pow / 12.0;
    if (too_many_bad) {
      ++bad_rejections;
      continue;
    }

    std::vector<Permutation> kept;
    kept.reserve(sampled.size());
    for (const Permutation& sigma : sampled) {
      bool covers_bad = false;
      for (int d : b.indices()) {
        if (bad.count(sigma.image(d))) {
          covers_bad = true;
          break;
        }
      }
      if (!covers_bad) kept.push_back(sigma);
    }

    ShiftSelection sel;
    sel.coverage = count_coverage(kept, b);
    for (const auto& [index, count] : sel.coverage) {
      if (count > 3) {
        throw std::logic_error("shift selection: coverage above 3 after deletion at index " +
                               std::to_string(index));
      }
    }
    const int t_final = static_cast<int>(kept.size());
    sel.meets_size_threshold =
        slack == 1.0 ? t_final >= ceil_pow_3_7_div(n, 2)
                     : static_cast<double>(t_final) >= slack * real_pow / 2.0;
    sel.elements = std::move(kept);
    sel.base_block = b;
    sel.attempts_used = attempt;
    sel.t0_sampled = t0;
    return sel;
  }

  std::ostringstream msg;
  msg << "shift selection: no attempt accepted after " << max_retries << " tries ("
      << terrible_rejections << " with a terrible index, " << bad_rejections
      << " with too many bad indices)";
  throw construction_failure(msg.str(), max_retries);
}

ConsensusAssignment consensus_values(const ShiftSelection& sel, const Pattern& p) {
  ConsensusAssignment cons;
  std::vector<int> multi;
  for (const auto& [index, count] : sel.coverage) {
    if (count < 2) continue;
    int ones = 0;
    int zeros = 0;
    for (const Permutation& sigma : sel.elements) {
      const int d = sigma.preimage(index);
      if (d < p.length() && p.defined(d)) {
        (p.value(d) == 1 ? ones : zeros) += 1;
      }
    }
    cons.assigned[index] = ones > zeros ? 1 : 0;
    multi.push_back(index);
  }
  cons.multi_covered = Block(std::move(multi));
  return cons;
}

BlockSensitivityWitness greedy_flip_witness(const MintermFunction& f, const ShiftSelection& sel,
                                            const ConsensusAssignment& cons,
                                            const BitString& x0) {
  if (f.eval(x0) != 0) {
    throw std::invalid_argument("greedy flip: starting input must evaluate to 0");
  }
  const int n = f.length();
  const Pattern& p = f.pattern();
  const std::vector<Permutation>& elements = f.elements();

  // Disagreement counts |D_sigma(x)| for every group element, updated
  // incrementally: f(x) = 0 exactly when all counts are positive.
  std::vector<int> disagreements(elements.size(), 0);
  // For each position, the group elements whose shifted pattern is defined
  // there, with the value they expect.
  std::vector<std::vector<std::pair<int, std::uint8_t>>> expecting(
      static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < elements.size(); ++j) {
    for (int d : p.domain()) {
      expecting[static_cast<std::size_t>(elements[j].image(d))].emplace_back(
          j, static_cast<std::uint8_t>(p.value(d)));
    }
  }
  std::vector<std::uint8_t> x(x0.bits());
  for (std::size_t j = 0; j < elements.size(); ++j) {
    int count = 0;
    for (int d : p.domain()) {
      if (x[static_cast<std::size_t>(elements[j].image(d))] != p.value(d)) ++count;
    }
    disagreements[j] = count;
  }

  const std::vector<int>& u = cons.multi_covered.indices();
  // Flipping i keeps f at 0 when no element's disagreement count would drop
  // to zero.
  const auto flip_keeps_zero = [&](int i) {
    for (const auto& [j, expected] : expecting[static_cast<std::size_t>(i)]) {
      const int next = disagreements[j] + (x[static_cast<std::size_t>(i)] == expected ? 1 : -1);
      if (next == 0) return false;
    }
    return true;
  };
  const auto apply_flip = [&](int i) {
    for (const auto& [j, expected] : expecting[static_cast<std::size_t>(i)]) {
      disagreements[j] += x[static_cast<std::size_t>(i)] == expected ? 1 : -1;
    }
    x[static_cast<std::size_t>(i)] ^= 1;
  };

  bool flipped = true;
  while (flipped) {
    flipped = false;
    for (int i : u) {
      if (x[static_cast<std::size_t>(i)] == cons.assigned.at(i)) continue;
      if (flip_keeps_zero(i)) {
        apply_flip(i);
        flipped = true;
        break;
      }
    }
  }

  std::set<int> stubborn;
  for (int i : u) {
    if (x[static_cast<std::size_t>(i)] != cons.assigned.at(i)) stubborn.insert(i);
  }

  std::vector<Block> singletons;
  singletons.reserve(stubborn.size());
  for (int i : stubborn) singletons.push_back(Block({i}));

  // Disagreement sets of the distinct selection elements whose shifted
  // domains avoid every stubborn index.
  std::set<Permutation> distinct(sel.elements.begin(), sel.elements.end());
  std::vector<Block> stubborn_free;
  for (const Permutation& sigma : distinct) {
    bool free_of_stubborn = true;
    std::vector<int> disagreement;
    for (int d : p.domain()) {
      const int i = sigma.image(d);
      if (stubborn.count(i)) {
        free_of_stubborn = false;
        break;
      }
      if (x[static_cast<std::size_t>(i)] != p.value(d)) disagreement.push_back(i);
    }
    if (free_of_stubborn) stubborn_free.push_back(Block(std::move(disagreement)));
  }
  for (std::size_t a = 0; a < stubborn_free.size(); ++a) {
    if (stubborn_free[a].empty()) {
      throw std::logic_error("greedy flip: empty disagreement set on a 0-input");
    }
    for (std::size_t c = a + 1; c < stubborn_free.size(); ++c) {
      if (stubborn_free[a].intersects(stubborn_free[c])) {
        throw std::logic_error("greedy flip: stubborn-free disagreement sets overlap");
      }
    }
  }

  std::vector<Block>& chosen =
      stubborn_free.size() >= singletons.size() ? stubborn_free : singletons;
  std::sort(chosen.begin(), chosen.end());
  std::string text(x.size(), '0');
  for (std::size_t i = 0; i < x.size(); ++i) text[i] = x[i] ? '1' : '0';
  return BlockSensitivityWitness(f, BitString(text), std::move(chosen));
}

BlockSensitivityWitness heavy_pattern_witness(const MintermFunction& f) {
  const Pattern& p = f.pattern();
  const int n = p.length();
  int ones = 0;
  for (int d : p.domain()) ones += p.value(d);
  const int zeros = p.domain_size() - ones;
  const int b = ones >= zeros ? 1 : 0;

  std::string text(static_cast<std::size_t>(n), b == 1 ? '0' : '1');
  for (int d : p.domain()) text[static_cast<std::size_t>(d)] = p.value(d) ? '1' : '0';

  std::vector<Block> blocks;
  for (int d : p.domain()) {
    if (p.value(d) == b) blocks.push_back(Block({d}));
  }
  return BlockSensitivityWitness(f, BitString(text), std::move(blocks));
}

const char* to_string(LowerBoundBranch branch) {
  return branch == LowerBoundBranch::heavy ? "heavy" : "nicepack";
}

LowerBoundReport lower_bound_pipeline(const MintermFunction& f, std::uint64_t seed,
                                      int max_retries, double slack) {
  const int n = f.length();
  const Pattern& p = f.pattern();
  const int dom_size = p.domain_size();

  const int threshold_half_dom = (dom_size + 1) / 2;
  const int threshold_twelfth = ceil_pow_3_7_div(n, 12);
  const int threshold_quarter = ceil_pow_3_7_div(n, 4);

  if (dom_size > floor_pow_3_7(n)) {
    BlockSensitivityWitness witness = heavy_pattern_witness(f);
    const int count = witness.count();
    return LowerBoundReport{n,
                            dom_size,
                            LowerBoundBranch::heavy,
                            0,
                            0,
                            std::move(witness),
                            count,
                            threshold_half_dom,
                            threshold_twelfth,
                            threshold_quarter,
                            seed,
                            0};
  }

  ShiftSelection sel =
      select_low_overlap_shifts(f.group(), Block(p.domain()), seed, max_retries, slack);
  ConsensusAssignment cons = consensus_values(sel, p);
  bool has_one = false;
  for (int d : p.domain()) has_one = has_one || p.value(d) == 1;
  const BitString x0 = has_one ? BitString::zeros(n) : BitString::ones(n);
  BlockSensitivityWitness witness = greedy_flip_witness(f, sel, cons, x0);
  const int count = witness.count();
  return LowerBoundReport{n,
                          dom_size,
                          LowerBoundBranch::nicepack,
                          sel.t0_sampled,
                          static_cast<int>(sel.elements.size()),
                          std::move(witness),
                          count,
                          threshold_half_dom,
                          threshold_twelfth,
                          threshold_quarter,
                          seed,
                          sel.attempts_used - 1};
}

}  // namespace mtbs
