#include "mtbs/functions.hpp"

#include <algorithm>

namespace mtbs {

MintermFunction::MintermFunction(GroupSpec group, Pattern pattern)
    : group_(std::move(group)), pattern_(std::move(pattern)) {
  if (group_.length() != pattern_.length()) {
    throw std::invalid_argument("minterm function: group and pattern length mismatch");
  }
  if (pattern_.domain().empty()) {
    throw std::invalid_argument("minterm function: pattern defines no position");
  }
  elements_ = enumerate_group(group_);
}

bool MintermFunction::shift_matches(const BitString& x, int offset) const {
  const int n = pattern_.length();
  for (int d : pattern_.domain()) {
    int i = d + offset;
    if (i >= n) i -= n;
    if (x.bit(i) != pattern_.value(d)) return false;
  }
  return true;
}

bool MintermFunction::element_matches(const BitString& x, const Permutation& sigma) const {
  for (int d : pattern_.domain()) {
    if (x.bit(sigma.image(d)) != pattern_.value(d)) return false;
  }
  return true;
}

int MintermFunction::eval(const BitString& x) const {
  if (x.length() != pattern_.length()) {
    throw std::invalid_argument("eval: input length mismatch");
  }
  const int n = pattern_.length();
  if (group_.is_cyclic()) {
    // Anchor on the domain position whose value is the rarer bit of x, so the
    // quadratic fall-back triggers on as few shifts as possible.
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += x.bit(i);
    const int rare = 2 * ones <= n ? 1 : 0;
    int anchor = pattern_.domain().front();
    for (int d : pattern_.domain()) {
      if (pattern_.value(d) == rare) {
        anchor = d;
        break;
      }
    }
    const int v = pattern_.value(anchor);
    for (int i = 0; i < n; ++i) {
      if (x.bit(i) != v) continue;
      int offset = i - anchor;
      if (offset < 0) offset += n;
      if (shift_matches(x, offset)) return 1;
    }
    return 0;
  }
  for (const Permutation& sigma : elements_) {
    if (element_matches(x, sigma)) return 1;
  }
  return 0;
}

std::vector<Permutation> MintermFunction::matching_shifts(const BitString& x) const {
  if (x.length() != pattern_.length()) {
    throw std::invalid_argument("matching_shifts: input length mismatch");
  }
  std::vector<Permutation> out;
  for (const Permutation& sigma : elements_) {
    if (element_matches(x, sigma)) out.push_back(sigma);
  }
  return out;
}

std::vector<std::pair<Permutation, Block>> MintermFunction::disagreement_sets(
    const BitString& x) const {
  if (x.length() != pattern_.length()) {
    throw std::invalid_argument("disagreement_sets: input length mismatch");
  }
  std::vector<std::pair<Permutation, Block>> out;
  out.reserve(elements_.size());
  for (const Permutation& sigma : elements_) {
    std::vector<int> bad;
    for (int d : pattern_.domain()) {
      int i = sigma.image(d);
      if (x.bit(i) != pattern_.value(d)) bad.push_back(i);
    }
    out.emplace_back(sigma, Block(std::move(bad)));
  }
  return out;
}

}  // namespace mtbs
