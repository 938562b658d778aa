#pragma once

#include <utility>
#include <vector>

#include "mtbs/core.hpp"

namespace mtbs {

// Boolean function f(x) = 1 iff x agrees with sigma(p) for some group
// element sigma. The pattern must define at least one position.
class MintermFunction {
 public:
  MintermFunction(GroupSpec group, Pattern pattern);

  int length() const { return pattern_.length(); }
  const Pattern& pattern() const { return pattern_; }
  const GroupSpec& group() const { return group_; }
  // Enumerated group elements in deterministic order. For cyclic groups this
  // is t_0..t_{n-1}; explicit groups are enumerated once at construction.
  const std::vector<Permutation>& elements() const { return elements_; }

  // 0 or 1. Cyclic groups use an anchored scan: a shift is fully tested only
  // after one anchor position of the shifted pattern matches x.
  int eval(const BitString& x) const;

  // All group elements sigma with x agreeing with sigma(p).
  std::vector<Permutation> matching_shifts(const BitString& x) const;

  // For each enumerated sigma, the disagreement set
  // D_sigma = { i in dom(sigma(p)) : x_i != sigma(p)_i }.
  std::vector<std::pair<Permutation, Block>> disagreement_sets(const BitString& x) const;

 private:
  bool shift_matches(const BitString& x, int offset) const;
  bool element_matches(const BitString& x, const Permutation& sigma) const;

  GroupSpec group_;
  Pattern pattern_;
  std::vector<Permutation> elements_;
};

}  // namespace mtbs
