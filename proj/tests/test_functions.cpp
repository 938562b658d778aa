#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "mtbs/functions.hpp"
#include "mtbs/rng.hpp"

using namespace mtbs;

namespace {

MintermFunction adjacent_pair_6() {
  return MintermFunction(GroupSpec::cyclic(6), Pattern("11****"));
}

}  // namespace

TEST_CASE("construction validates lengths and nonempty domain") {
  CHECK_THROWS_AS(MintermFunction(GroupSpec::cyclic(4), Pattern("11****")),
                  std::invalid_argument);
  CHECK_THROWS_AS(MintermFunction(GroupSpec::cyclic(4), Pattern("****")),
                  std::invalid_argument);
  const MintermFunction f = adjacent_pair_6();
  CHECK(f.length() == 6);
  CHECK(f.elements().size() == 6);
}

TEST_CASE("eval on the adjacent-pair function") {
  const MintermFunction f = adjacent_pair_6();
  CHECK(f.eval(BitString("110000")) == 1);
  CHECK(f.eval(BitString("010101")) == 0);
  CHECK(f.eval(BitString("100001")) == 1);  // wraparound pair at 5,0
  CHECK_THROWS_AS(f.eval(BitString("1100")), std::invalid_argument);
}

TEST_CASE("matching shifts") {
  const MintermFunction f = adjacent_pair_6();
  const auto at = [&](const char* text) { return f.matching_shifts(BitString(text)); };

  const auto m0 = at("110000");
  REQUIRE(m0.size() == 1);
  CHECK(m0[0].cyclic_offset() == 0);

  const auto m1 = at("111000");
  REQUIRE(m1.size() == 2);
  CHECK(m1[0].cyclic_offset() == 0);
  CHECK(m1[1].cyclic_offset() == 1);

  CHECK(at("000000").empty());
}

TEST_CASE("disagreement sets") {
  const MintermFunction f = adjacent_pair_6();

  const auto zero = f.disagreement_sets(BitString("000000"));
  REQUIRE(zero.size() == 6);
  for (const auto& [sigma, d] : zero) {
    const int j = sigma.cyclic_offset();
    CHECK(d == Block(std::vector<int>{j, (j + 1) % 6}));
  }

  const auto matched = f.disagreement_sets(BitString("110000"));
  CHECK(matched[0].second.empty());

  const auto half = f.disagreement_sets(BitString("100000"));
  CHECK(half[0].second == Block(std::vector<int>{1}));
  CHECK(half[5].second == Block(std::vector<int>{5}));
}

TEST_CASE("flipping any disagreement set of a zero input creates a match") {
  SplitRng rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = 6 + static_cast<int>(rng.below(5));
    const Pattern p = random_pattern(rng, n, 1 + static_cast<int>(rng.below(n)));
    const MintermFunction f(GroupSpec::cyclic(n), p);
    const BitString x = random_bitstring(rng, n);
    if (f.eval(x) != 0) continue;
    for (const auto& [sigma, d] : f.disagreement_sets(x)) {
      CHECK(!d.empty());
      CHECK(f.eval(flip(x, d)) == 1);
    }
  }
}

TEST_CASE("eval is invariant under the group") {
  SplitRng rng(32);
  for (int t = 0; t < 25; ++t) {
    const int n = 5 + static_cast<int>(rng.below(6));
    const Pattern p = random_pattern(rng, n, 1 + static_cast<int>(rng.below(n)));
    const MintermFunction f(GroupSpec::cyclic(n), p);
    for (int draw = 0; draw < 100; ++draw) {
      const BitString x = random_bitstring(rng, n);
      const Permutation sigma = Permutation::cyclic(n, static_cast<int>(rng.below(n)));
      CHECK(f.eval(x) == f.eval(apply_permutation(x, sigma)));
    }
  }
}

TEST_CASE("anchored cyclic fast path matches explicit enumeration") {
  SplitRng rng(33);
  for (int n = 4; n <= 10; ++n) {
    const Pattern p = random_pattern(rng, n, 1 + static_cast<int>(rng.below(n)));
    const MintermFunction fast(GroupSpec::cyclic(n), p);
    // t_1 generates the full cyclic group, but through the generic path.
    const MintermFunction slow(GroupSpec::explicit_group({Permutation::cyclic(n, 1)}), p);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      std::string text(static_cast<std::size_t>(n), '0');
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) text[static_cast<std::size_t>(i)] = '1';
      }
      const BitString x(text);
      CHECK(fast.eval(x) == slow.eval(x));
    }
  }
}
