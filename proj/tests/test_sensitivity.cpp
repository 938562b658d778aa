#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "mtbs/rng.hpp"
#include "mtbs/sensitivity.hpp"

using namespace mtbs;

namespace {

MintermFunction adjacent_pair_6() {
  return MintermFunction(GroupSpec::cyclic(6), Pattern("11****"));
}

Block pair_mod6(int j) { return Block(std::vector<int>{j, (j + 1) % 6}); }

}  // namespace

TEST_CASE("truth table matches eval") {
  const MintermFunction f = adjacent_pair_6();
  const TruthTable table(f);
  for (std::uint32_t v = 0; v < 64; ++v) {
    const BitString x = TruthTable::unpack(v, 6);
    CHECK(TruthTable::pack(x) == v);
    CHECK(table.value(v) == f.eval(x));
  }
  SensitivityLimits tight;
  tight.sweep_input_limit = 16;
  CHECK_THROWS_AS(TruthTable(f, tight), resource_limit_error);
}

TEST_CASE("sensitivity at single inputs") {
  const MintermFunction f = adjacent_pair_6();
  CHECK(sensitivity_at(f, BitString("000000")) == 0);
  CHECK(sensitivity_at(f, BitString("110000")) == 2);
  CHECK(sensitivity_at(f, BitString("111111")) == 0);
}

TEST_CASE("minimal sensitive blocks") {
  const MintermFunction f = adjacent_pair_6();

  const auto pairs = minimal_sensitive_blocks(f, BitString("000000"), 6);
  REQUIRE(pairs.size() == 6);
  for (int j = 0; j < 6; ++j) {
    CHECK(std::find(pairs.begin(), pairs.end(), pair_mod6(j)) != pairs.end());
  }

  const auto singles = minimal_sensitive_blocks(f, BitString("110000"), 1);
  REQUIRE(singles.size() == 2);
  CHECK(singles[0] == Block(std::vector<int>{0}));
  CHECK(singles[1] == Block(std::vector<int>{1}));

  CHECK(minimal_sensitive_blocks(f, BitString("000000"), 0).empty());

  SensitivityLimits tight;
  tight.bruteforce_n_limit = 4;
  CHECK_THROWS_AS(minimal_sensitive_blocks(f, BitString("000000"), 6, tight),
                  resource_limit_error);
}

TEST_CASE("maximum disjoint packing") {
  CHECK(max_disjoint_packing({}).count == 0);
  CHECK(max_disjoint_packing({}).selection.empty());

  std::vector<Block> ring;
  for (int j = 0; j < 6; ++j) ring.push_back(pair_mod6(j));
  const PackingResult packed = max_disjoint_packing(ring);
  CHECK(packed.count == 3);
  CHECK(packed.selection == std::vector<int>{0, 2, 4});

  const std::vector<Block> singletons{Block(std::vector<int>{0}), Block(std::vector<int>{1}),
                                      Block(std::vector<int>{2})};
  const PackingResult all = max_disjoint_packing(singletons);
  CHECK(all.count == 3);
  CHECK(all.selection == std::vector<int>{0, 1, 2});

  // Size-ascending order lets the bound prune: one big set vs two small ones.
  const std::vector<Block> mixed{Block(std::vector<int>{0, 1, 2, 3}), Block(std::vector<int>{0}),
                                 Block(std::vector<int>{4})};
  CHECK(max_disjoint_packing(mixed).count == 2);
}

TEST_CASE("witness construction re-verifies") {
  const MintermFunction f = adjacent_pair_6();
  const BitString x("000000");
  CHECK(BlockSensitivityWitness(f, x, {pair_mod6(0), pair_mod6(2)}).count() == 2);
  // {2} alone does not flip the value at the all-zeros input.
  CHECK_THROWS_AS(BlockSensitivityWitness(f, x, {Block(std::vector<int>{2})}),
                  witness_verification_error);
  CHECK_THROWS_AS(BlockSensitivityWitness(f, x, {pair_mod6(0), pair_mod6(1)}),
                  witness_verification_error);
  CHECK_THROWS_AS(BlockSensitivityWitness(f, x, {Block()}), witness_verification_error);
}

TEST_CASE("block sensitivity at single inputs") {
  const MintermFunction f = adjacent_pair_6();
  const BitString zeros("000000");

  const auto structured = bs_at(f, zeros, BsMode::structured_zero);
  CHECK(structured.count() == 3);
  CHECK(structured.value_at_input() == 0);

  const auto brute = bs_at(f, zeros, BsMode::bruteforce);
  CHECK(brute.count() == 3);

  const auto or4 = bs_at(MintermFunction(GroupSpec::cyclic(4), Pattern("1***")),
                         BitString("0000"), BsMode::structured_zero);
  CHECK(or4.count() == 4);
  for (const Block& b : or4.blocks()) CHECK(b.size() == 1);

  CHECK_THROWS_AS(bs_at(f, BitString("110000"), BsMode::structured_zero),
                  std::invalid_argument);
  SensitivityLimits tight;
  tight.bruteforce_n_limit = 4;
  CHECK_THROWS_AS(bs_at(f, zeros, BsMode::bruteforce, tight), resource_limit_error);
}

TEST_CASE("global measures on small frozen instances") {
  SUBCASE("adjacent pair on six bits") {
    const SensitivityReport r = global_measures(adjacent_pair_6());
    CHECK(r.n == 6);
    CHECK(r.s == 4);
    CHECK(r.bs0 == 4);
    CHECK(r.bs1 == 2);
    CHECK(r.bs == 4);
    CHECK(r.explored_inputs == 64);
    REQUIRE(r.witness0.has_value());
    REQUIRE(r.witness1.has_value());
    CHECK(r.witness0->count() == 4);
    CHECK(r.witness0->value_at_input() == 0);
    CHECK(r.witness1->count() == 2);
  }
  SUBCASE("ten-then-zero on five bits") {
    const SensitivityReport r =
        global_measures(MintermFunction(GroupSpec::cyclic(5), Pattern("10***")));
    CHECK(r.s == 5);
    CHECK(r.bs0 == 5);
    CHECK(r.bs1 == 2);
    CHECK(r.bs == 5);
  }
  SUBCASE("or on four bits") {
    const SensitivityReport r =
        global_measures(MintermFunction(GroupSpec::cyclic(4), Pattern("1***")));
    CHECK(r.s == 4);
    CHECK(r.bs0 == 4);
    CHECK(r.bs1 == 1);
    CHECK(r.bs == 4);
  }
  SUBCASE("adjacent pair then zero on six bits") {
    const SensitivityReport r =
        global_measures(MintermFunction(GroupSpec::cyclic(6), Pattern("110***")));
    CHECK(r.s == 6);
    CHECK(r.bs0 == 6);
    CHECK(r.bs1 == 3);
    CHECK(r.bs == 6);
  }
}

TEST_CASE("global sweep is independent of the worker count") {
  const MintermFunction f(GroupSpec::cyclic(7), Pattern("101****"));
  const SensitivityReport one = global_measures(f, {}, 1);
  const SensitivityReport three = global_measures(f, {}, 3);
  CHECK(one.s == three.s);
  CHECK(one.bs0 == three.bs0);
  CHECK(one.bs1 == three.bs1);
  CHECK(one.witness0->input() == three.witness0->input());
  CHECK(one.witness1->input() == three.witness1->input());
  CHECK(one.witness0->blocks() == three.witness0->blocks());
}

TEST_CASE("global sweep refuses oversized inputs") {
  SensitivityLimits tight;
  tight.sweep_input_limit = 32;
  CHECK_THROWS_AS(global_measures(adjacent_pair_6(), tight), resource_limit_error);
}

TEST_CASE("s is at most bs and shrinking always finds a minimal sub-block") {
  SplitRng rng(41);
  for (int t = 0; t < 10; ++t) {
    const int n = 6 + static_cast<int>(rng.below(3));
    const Pattern p = random_pattern(rng, n, 1 + static_cast<int>(rng.below(n)));
    const MintermFunction f(GroupSpec::cyclic(n), p);
    const SensitivityReport r = global_measures(f);
    CHECK(r.s <= r.bs);
    CHECK(r.bs == std::max(r.bs0, r.bs1));

    const BitString x = random_bitstring(rng, n);
    const auto minimal = minimal_sensitive_blocks(f, x, n);
    for (int draw = 0; draw < 20; ++draw) {
      const Block b = random_block(rng, n, 1 + static_cast<int>(rng.below(n)));
      if (f.eval(flip(x, b)) == f.eval(x)) continue;
      bool contains_minimal = false;
      for (const Block& m : minimal) {
        bool subset = true;
        for (int i : m.indices()) subset = subset && b.contains(i);
        contains_minimal = contains_minimal || subset;
      }
      CHECK(contains_minimal);
    }
  }
}
