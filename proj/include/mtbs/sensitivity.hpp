#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mtbs/functions.hpp"

namespace mtbs {

struct SensitivityLimits {
  // Brute-force block enumeration walks all 2^n subsets; refuse above this n.
  int bruteforce_n_limit = 18;
  // Global sweeps visit all 2^n inputs; refuse when 2^n exceeds this.
  std::uint64_t sweep_input_limit = std::uint64_t{1} << 20;
};

// Cached table of f over all 2^n inputs. Input x maps to the integer whose
// bit i equals x_i.
class TruthTable {
 public:
  TruthTable(const MintermFunction& f, const SensitivityLimits& limits = {});

  int n() const { return n_; }
  int value(std::uint32_t x) const { return values_[x]; }

  static std::uint32_t pack(const BitString& x);
  static BitString unpack(std::uint32_t x, int n);

 private:
  int n_;
  std::vector<std::uint8_t> values_;
};

// Certificate that `blocks` are pairwise disjoint and each flips f at
// `input`. Re-verified on construction; a failure means the producing
// algorithm is broken and raises witness_verification_error.
class BlockSensitivityWitness {
 public:
  BlockSensitivityWitness(const MintermFunction& f, BitString input,
                          std::vector<Block> blocks);

  const BitString& input() const { return input_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int value_at_input() const { return value_; }
  int count() const { return static_cast<int>(blocks_.size()); }

 private:
  BitString input_;
  std::vector<Block> blocks_;
  int value_;
};

struct SensitivityReport {
  int n = 0;
  int s = 0;
  int bs0 = 0;
  int bs1 = 0;
  int bs = 0;
  // Inputs attaining the maxima, smallest packed input on ties.
  std::optional<BlockSensitivityWitness> witness0;
  std::optional<BlockSensitivityWitness> witness1;
  std::uint64_t explored_inputs = 0;
};

// Number of indices i with f(x ^ e_i) != f(x).
int sensitivity_at(const MintermFunction& f, const BitString& x);

// Inclusion-minimal sensitive blocks of size <= size_cap, in (size, packed
// mask) order. Enumerates subsets in size order and skips supersets of
// already found minimal blocks. Requires n <= limits.bruteforce_n_limit.
std::vector<Block> minimal_sensitive_blocks(const MintermFunction& f, const BitString& x,
                                            int size_cap,
                                            const SensitivityLimits& limits = {},
                                            const TruthTable* table = nullptr);

struct PackingResult {
  int count = 0;
  std::vector<int> selection;  // indices into the input list, ascending
};

// Maximum-cardinality pairwise-disjoint subfamily via branch and bound
// (candidates ordered by size ascending, greedy family as lower bound,
// remaining-count upper bound). Among maximum selections the
// lexicographically smallest index list is returned.
PackingResult max_disjoint_packing(const std::vector<Block>& sets);

enum class BsMode {
  // Minimal sensitive blocks + maximum disjoint packing; any input.
  bruteforce,
  // Distinct nonempty disagreement sets + packing; only for f(x) = 0.
  // Exact because every sensitive block at a 0-input contains the
  // disagreement set of the shift its flip matches, so a maximum disjoint
  // family shrinks blockwise to distinct disagreement sets.
  structured_zero,
};

BlockSensitivityWitness bs_at(const MintermFunction& f, const BitString& x, BsMode mode,
                              const SensitivityLimits& limits = {},
                              const TruthTable* table = nullptr);

// Exact s, bs0, bs1 and bs from a sweep over all 2^n inputs. Zero inputs use
// the structured route, one inputs the brute-force route. `jobs` splits the
// sweep into contiguous ranges whose results merge with a deterministic
// tie-break, so the report does not depend on the worker count.
SensitivityReport global_measures(const MintermFunction& f,
                                  const SensitivityLimits& limits = {}, int jobs = 1);

}  // namespace mtbs
