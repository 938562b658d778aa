#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mtbs/sensitivity.hpp"

namespace mtbs {

// Sample-and-delete selection of group elements whose shifted copies of a
// base block overlap at most 3 deep at every index.
struct ShiftSelection {
  std::vector<Permutation> elements;  // Sigma, after deletion
  Block base_block;                   // B
  std::map<int, int> coverage;        // index -> number of sigma(B) containing it
  int attempts_used = 0;              // sampling attempts spent (>= 1)
  int t0_sampled = 0;                 // elements drawn per attempt
  bool meets_size_threshold = false;  // |Sigma| reached the target size

  // Hand-built selection from explicit elements; coverage is recounted and
  // must stay <= 3 everywhere.
  static ShiftSelection from_elements(std::vector<Permutation> elements, Block base_block);
};

// Majority vote over the shifted pattern values at multiply covered indices.
struct ConsensusAssignment {
  std::map<int, int> assigned;  // index in U -> value v_i
  Block multi_covered;          // U: indices with coverage >= 2
};

// Draws t0 = ceil(n^(3/7)) uniform group elements per attempt; an index
// covered >= 4 times is bad, >= 7 terrible. Attempts with a terrible index
// or with bad count >= slack * n^(3/7) / 12 are resampled (attempt k uses
// sub-stream k of the seed). On acceptance every element covering a bad
// index is deleted, which brings the maximum coverage down to 3. The
// returned selection meets the size threshold when
// |Sigma| >= slack * n^(3/7) / 2; smaller selections are still returned
// with meets_size_threshold = false.
// Requires |b| <= n^(3/7) and a transitive group; throws construction_failure
// when max_retries attempts all get resampled.
ShiftSelection select_low_overlap_shifts(const GroupSpec& g, const Block& b,
                                         std::uint64_t seed, int max_retries = 50,
                                         double slack = 1.0);

// v_i for each index covered >= 2: majority of the <= 3 defined values of
// the shifted patterns at i, ties toward 0. At most one shifted pattern can
// then disagree with v_i at i.
ConsensusAssignment consensus_values(const ShiftSelection& sel, const Pattern& p);

// From the 0-input x0, repeatedly flip the smallest index i in U with
// x_i != v_i while f stays 0. On halt the remaining disagreeing indices are
// stubborn: flipping any one of them alone makes f equal 1. Returns the
// larger of (a) the stubborn singleton blocks and (b) the disagreement sets
// of the distinct selection elements whose shifted domains contain no
// stubborn index; family (b) is pairwise disjoint because at most one
// shifted pattern disagrees with the consensus at any multiply covered index.
BlockSensitivityWitness greedy_flip_witness(const MintermFunction& f, const ShiftSelection& sel,
                                            const ConsensusAssignment& cons,
                                            const BitString& x0);

// Witness for patterns with a large domain: with b the majority defined
// value (ties toward 1) and x the pattern filled with 1-b outside its
// domain, every position where the pattern equals b is a sensitive singleton
// of the 1-input x, because flipping it leaves fewer b-valued bits than any
// shifted copy of the pattern requires.
BlockSensitivityWitness heavy_pattern_witness(const MintermFunction& f);

enum class LowerBoundBranch { heavy, nicepack };

const char* to_string(LowerBoundBranch branch);

struct LowerBoundReport {
  int n = 0;
  int dom_size = 0;
  LowerBoundBranch branch = LowerBoundBranch::nicepack;
  int t0 = 0;       // elements sampled per attempt (0 on the heavy branch)
  int t_final = 0;  // selection size after deletion (0 on the heavy branch)
  BlockSensitivityWitness witness;
  int witness_count = 0;
  int threshold_half_dom = 0;  // ceil(|dom(p)| / 2)
  int threshold_twelfth = 0;   // ceil(n^(3/7) / 12)
  int threshold_quarter = 0;   // ceil(n^(3/7) / 4)
  std::uint64_t seed = 0;
  int retries = 0;  // resamples performed, attempts_used - 1
};

// Full witness pipeline: the heavy branch when |dom(p)| > n^(3/7), otherwise
// shift selection, consensus and the greedy flip loop from x0 = all-zeros
// (all-ones when the pattern defines no 1, so that x0 is always a 0-input).
LowerBoundReport lower_bound_pipeline(const MintermFunction& f, std::uint64_t seed,
                                      int max_retries = 50, double slack = 1.0);

}  // namespace mtbs
