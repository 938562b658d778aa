#include "mtbs/sensitivity.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

namespace mtbs {

namespace {

void require_input_limit(int n, const SensitivityLimits& limits, const char* what) {
  if (n > 63 || (std::uint64_t{1} << n) > limits.sweep_input_limit) {
    throw resource_limit_error(std::string(what) + ": 2^" + std::to_string(n) +
                               " inputs exceed limit " +
                               std::to_string(limits.sweep_input_limit));
  }
}

void require_bruteforce_limit(int n, const SensitivityLimits& limits, const char* what) {
  if (n > limits.bruteforce_n_limit) {
    throw resource_limit_error(std::string(what) + ": n=" + std::to_string(n) +
                               " exceeds brute-force limit " +
                               std::to_string(limits.bruteforce_n_limit));
  }
}

}  // namespace

TruthTable::TruthTable(const MintermFunction& f, const SensitivityLimits& limits)
    : n_(f.length()) {
  require_input_limit(n_, limits, "truth table");
  const std::uint64_t total = std::uint64_t{1} << n_;
  values_.resize(total);
  std::string text(static_cast<std::size_t>(n_), '0');
  for (std::uint64_t x = 0; x < total; ++x) {
    for (int i = 0; i < n_; ++i) {
      text[static_cast<std::size_t>(i)] = (x >> i) & 1 ? '1' : '0';
    }
    values_[x] = static_cast<std::uint8_t>(f.eval(BitString(text)));
  }
}

std::uint32_t TruthTable::pack(const BitString& x) {
  if (x.length() > 32) throw std::invalid_argument("truth table: input too long to pack");
  std::uint32_t out = 0;
  for (int i = 0; i < x.length(); ++i) {
    if (x.bit(i)) out |= std::uint32_t{1} << i;
  }
  return out;
}

BitString TruthTable::unpack(std::uint32_t x, int n) {
  std::string text(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1) text[static_cast<std::size_t>(i)] = '1';
  }
  return BitString(text);
}

BlockSensitivityWitness::BlockSensitivityWitness(const MintermFunction& f, BitString input,
                                                 std::vector<Block> blocks)
    : input_(std::move(input)), blocks_(std::move(blocks)), value_(f.eval(input_)) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) {
      throw witness_verification_error("witness: block " + std::to_string(i) + " is empty");
    }
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (blocks_[i].intersects(blocks_[j])) {
        throw witness_verification_error("witness: blocks " + std::to_string(i) + " and " +
                                         std::to_string(j) + " intersect");
      }
    }
    if (f.eval(flip(input_, blocks_[i])) == value_) {
      throw witness_verification_error("witness: block " + std::to_string(i) +
                                       " does not flip the value");
    }
  }
}

int sensitivity_at(const MintermFunction& f, const BitString& x) {
  const int v = f.eval(x);
  int count = 0;
  for (int i = 0; i < f.length(); ++i) {
    if (f.eval(flip(x, Block({i}))) != v) ++count;
  }
  return count;
}

namespace {

Block mask_to_block(std::uint32_t mask) {
  std::vector<int> idx;
  while (mask) {
    idx.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return Block(std::move(idx));
}

std::vector<std::uint32_t> minimal_sensitive_masks(const TruthTable& table, std::uint32_t x,
                                                   int size_cap) {
  const int n = table.n();
  const std::uint32_t limit = std::uint32_t{1} << n;
  const int v = table.value(x);
  std::vector<std::uint32_t> found;
  for (int s = 1; s <= size_cap; ++s) {
    std::uint32_t mask = (std::uint32_t{1} << s) - 1;
    while (mask < limit) {
      bool contains_minimal = false;
      for (std::uint32_t m : found) {
        if ((mask & m) == m) {
          contains_minimal = true;
          break;
        }
      }
      if (!contains_minimal && table.value(x ^ mask) != v) found.push_back(mask);
      // Gosper's hack: next mask of the same popcount.
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return found;
}

}  // namespace

std::vector<Block> minimal_sensitive_blocks(const MintermFunction& f, const BitString& x,
                                            int size_cap, const SensitivityLimits& limits,
                                            const TruthTable* table) {
  require_bruteforce_limit(f.length(), limits, "minimal_sensitive_blocks");
  if (x.length() != f.length()) {
    throw std::invalid_argument("minimal_sensitive_blocks: input length mismatch");
  }
  if (size_cap < 0 || size_cap > f.length()) {
    throw std::invalid_argument("minimal_sensitive_blocks: size cap out of range");
  }
  std::optional<TruthTable> local;
  if (table == nullptr) {
    local.emplace(f, limits);
    table = &*local;
  }
  std::vector<Block> out;
  for (std::uint32_t mask : minimal_sensitive_masks(*table, TruthTable::pack(x), size_cap)) {
    out.push_back(mask_to_block(mask));
  }
  return out;
}

namespace {

struct ConflictGraph {
  int m;
  std::vector<char> conflict;  // m*m, symmetric
  bool at(int a, int b) const { return conflict[static_cast<std::size_t>(a) *
                                               static_cast<std::size_t>(m) + b] != 0; }
};

ConflictGraph build_conflicts(const std::vector<Block>& sets) {
  const int m = static_cast<int>(sets.size());
  ConflictGraph g{m, std::vector<char>(static_cast<std::size_t>(m) * m, 0)};
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (sets[a].intersects(sets[b])) {
        g.conflict[static_cast<std::size_t>(a) * m + b] = 1;
        g.conflict[static_cast<std::size_t>(b) * m + a] = 1;
      }
    }
  }
  return g;
}

// Upper bound on the largest disjoint family among `cand`: repeatedly group
// every candidate containing the currently most shared element; a disjoint
// family takes at most one set from each group. On chains of overlapping
// windows the bound is tight, which keeps the search polynomial there.
struct CoverBound {
  const std::vector<Block>* sets;
  int universe;

  int operator()(const std::vector<int>& cand) const {
    if (universe == 0) return static_cast<int>(cand.size());
    std::vector<int> freq(static_cast<std::size_t>(universe), 0);
    for (int c : cand) {
      for (int e : (*sets)[static_cast<std::size_t>(c)].indices()) {
        ++freq[static_cast<std::size_t>(e)];
      }
    }
    std::vector<int> alive = cand;
    int groups = 0;
    while (!alive.empty()) {
      int pivot = 0;
      for (int e = 1; e < universe; ++e) {
        if (freq[static_cast<std::size_t>(e)] > freq[static_cast<std::size_t>(pivot)]) pivot = e;
      }
      if (freq[static_cast<std::size_t>(pivot)] == 0) {
        // Only empty sets remain; each packs on its own.
        groups += static_cast<int>(alive.size());
        break;
      }
      ++groups;
      std::size_t kept = 0;
      for (int c : alive) {
        const Block& blk = (*sets)[static_cast<std::size_t>(c)];
        if (blk.contains(pivot)) {
          for (int e : blk.indices()) --freq[static_cast<std::size_t>(e)];
        } else {
          alive[kept++] = c;
        }
      }
      alive.resize(kept);
    }
    return groups;
  }
};

// Largest disjoint family size over candidates in `cand`. The cover bound is
// computed once per node; it stays valid while the loop shrinks `cand`.
int best_count_dfs(const ConflictGraph& g, const CoverBound& cover, std::vector<int> cand,
                   int chosen, int best) {
  if (chosen > best) best = chosen;
  if (chosen + static_cast<int>(cand.size()) <= best) return best;
  const int ub = cover(cand);
  while (true) {
    if (chosen + std::min(static_cast<int>(cand.size()), ub) <= best) return best;
    const int c = cand.front();
    std::vector<int> with;
    with.reserve(cand.size());
    for (std::size_t i = 1; i < cand.size(); ++i) {
      if (!g.at(c, cand[i])) with.push_back(cand[i]);
    }
    best = best_count_dfs(g, cover, std::move(with), chosen + 1, best);
    cand.erase(cand.begin());  // exclude c and continue in place
  }
}

// First (hence lexicographically smallest) selection of size `target` in
// ascending index order, include-first. Pruning only discards subtrees that
// provably cannot reach `target`, so the first hit stays the lex-least one.
bool lex_selection_dfs(const ConflictGraph& g, const CoverBound& cover,
                       const std::vector<int>& cand, int target, std::vector<int>& chosen) {
  if (static_cast<int>(chosen.size()) == target) return true;
  const int need = target - static_cast<int>(chosen.size());
  if (static_cast<int>(cand.size()) < need) return false;
  if (cover(cand) < need) return false;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    if (static_cast<int>(cand.size() - k) < need) return false;
    const int c = cand[k];
    std::vector<int> rest;
    rest.reserve(cand.size() - k);
    for (std::size_t i = k + 1; i < cand.size(); ++i) {
      if (!g.at(c, cand[i])) rest.push_back(cand[i]);
    }
    chosen.push_back(c);
    if (lex_selection_dfs(g, cover, rest, target, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

PackingResult max_disjoint_packing(const std::vector<Block>& sets) {
  const int m = static_cast<int>(sets.size());
  if (m == 0) return {};
  ConflictGraph g = build_conflicts(sets);
  int universe = 0;
  for (const Block& b : sets) {
    if (!b.empty()) universe = std::max(universe, b.indices().back() + 1);
  }
  const CoverBound cover{&sets, universe};

  std::vector<int> order(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sets[a].size() < sets[b].size(); });

  // Greedy lower bound over the size-ascending order.
  std::vector<int> greedy;
  for (int c : order) {
    bool ok = true;
    for (int t : greedy) {
      if (g.at(c, t)) {
        ok = false;
        break;
      }
    }
    if (ok) greedy.push_back(c);
  }
  const int best = best_count_dfs(g, cover, order, 0, static_cast<int>(greedy.size()));

  std::vector<int> ascending(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) ascending[static_cast<std::size_t>(i)] = i;
  PackingResult result;
  result.count = best;
  if (!lex_selection_dfs(g, cover, ascending, best, result.selection)) {
    throw std::logic_error("max_disjoint_packing: optimum not reproducible");
  }
  return result;
}

namespace {

std::vector<Block> distinct_nonempty_disagreements(const MintermFunction& f,
                                                   const BitString& x) {
  std::vector<Block> sets;
  for (auto& [sigma, d] : f.disagreement_sets(x)) {
    if (!d.empty()) sets.push_back(d);
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

std::vector<Block> pick(const std::vector<Block>& sets, const std::vector<int>& selection) {
  std::vector<Block> out;
  out.reserve(selection.size());
  for (int i : selection) out.push_back(sets[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

BlockSensitivityWitness bs_at(const MintermFunction& f, const BitString& x, BsMode mode,
                              const SensitivityLimits& limits, const TruthTable* table) {
  if (mode == BsMode::structured_zero) {
    if (f.eval(x) != 0) {
      throw std::invalid_argument("bs_at: structured mode requires a zero input");
    }
    std::vector<Block> sets = distinct_nonempty_disagreements(f, x);
    PackingResult packing = max_disjoint_packing(sets);
    return BlockSensitivityWitness(f, x, pick(sets, packing.selection));
  }
  std::vector<Block> blocks = minimal_sensitive_blocks(f, x, f.length(), limits, table);
  PackingResult packing = max_disjoint_packing(blocks);
  return BlockSensitivityWitness(f, x, pick(blocks, packing.selection));
}

namespace {

// Per-range maxima; inputs compared as packed integers for tie-breaks.
struct SweepPartial {
  int s = -1;
  std::uint32_t s_arg = 0;
  int bs0 = -1;
  std::uint32_t bs0_arg = 0;
  int bs1 = -1;
  std::uint32_t bs1_arg = 0;
};

void merge_max(int value, std::uint32_t arg, int& best, std::uint32_t& best_arg) {
  if (value > best || (value == best && arg < best_arg)) {
    best = value;
    best_arg = arg;
  }
}

SweepPartial sweep_range(const MintermFunction& f, const TruthTable& table,
                         std::uint32_t lo, std::uint32_t hi) {
  const int n = f.length();
  SweepPartial part;
  for (std::uint32_t x = lo; x < hi; ++x) {
    const int v = table.value(x);
    int s = 0;
    for (int i = 0; i < n; ++i) {
      if (table.value(x ^ (std::uint32_t{1} << i)) != v) ++s;
    }
    merge_max(s, x, part.s, part.s_arg);
    if (v == 0) {
      std::vector<Block> sets = distinct_nonempty_disagreements(f, TruthTable::unpack(x, n));
      merge_max(max_disjoint_packing(sets).count, x, part.bs0, part.bs0_arg);
    } else {
      std::vector<std::uint32_t> masks = minimal_sensitive_masks(table, x, n);
      std::vector<Block> blocks;
      blocks.reserve(masks.size());
      for (std::uint32_t m : masks) blocks.push_back(mask_to_block(m));
      merge_max(max_disjoint_packing(blocks).count, x, part.bs1, part.bs1_arg);
    }
  }
  return part;
}

}  // namespace

SensitivityReport global_measures(const MintermFunction& f, const SensitivityLimits& limits,
                                  int jobs) {
  const int n = f.length();
  require_input_limit(n, limits, "global_measures");
  require_bruteforce_limit(n, limits, "global_measures");
  if (jobs < 1) throw std::invalid_argument("global_measures: jobs must be positive");
  TruthTable table(f, limits);
  const std::uint32_t total = std::uint32_t{1} << n;
  const int workers = static_cast<int>(std::min<std::uint32_t>(
      static_cast<std::uint32_t>(jobs), total));

  std::vector<SweepPartial> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    parts[0] = sweep_range(f, table, 0, total);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const std::uint32_t lo = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(total) * w) / workers);
      const std::uint32_t hi = static_cast<std::uint32_t>(
          (static_cast<std::uint64_t>(total) * (w + 1)) / workers);
      threads.emplace_back([&, w, lo, hi] {
        parts[static_cast<std::size_t>(w)] = sweep_range(f, table, lo, hi);
      });
    }
    for (std::thread& t : threads) t.join();
  }

  SweepPartial merged;
  for (const SweepPartial& p : parts) {
    if (p.s >= 0) merge_max(p.s, p.s_arg, merged.s, merged.s_arg);
    if (p.bs0 >= 0) merge_max(p.bs0, p.bs0_arg, merged.bs0, merged.bs0_arg);
    if (p.bs1 >= 0) merge_max(p.bs1, p.bs1_arg, merged.bs1, merged.bs1_arg);
  }
  if (merged.bs0 < 0 || merged.bs1 < 0) {
    throw std::logic_error("global_measures: function is constant");
  }

  SensitivityReport report;
  report.n = n;
  report.s = merged.s;
  report.bs0 = merged.bs0;
  report.bs1 = merged.bs1;
  report.bs = std::max(merged.bs0, merged.bs1);
  report.explored_inputs = total;
  report.witness0 = bs_at(f, TruthTable::unpack(merged.bs0_arg, n), BsMode::structured_zero,
                          limits, &table);
  report.witness1 = bs_at(f, TruthTable::unpack(merged.bs1_arg, n), BsMode::bruteforce,
                          limits, &table);
  return report;
}

}  // namespace mtbs
