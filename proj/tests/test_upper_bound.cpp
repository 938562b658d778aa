#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtbs/upper_bound.hpp"

using namespace mtbs;

namespace {

Pattern defined_prefix(const std::string& values, int length) {
  std::string text = values;
  text.resize(static_cast<std::size_t>(length), '*');
  return Pattern(text);
}

Block four(int a, int b, int c, int d) { return Block(std::vector<int>{a, b, c, d}); }

}  // namespace

TEST_CASE("spec validation and derived quantities") {
  CHECK_THROWS_AS(CoveringPatternSpec::for_k(4), std::invalid_argument);
  CHECK_THROWS_AS(CoveringPatternSpec::for_k(67), std::invalid_argument);
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(68);
  CHECK(2.0 * spec.rho <= 1.0);
  CHECK(spec.window_length() == 135);

  const CoveringPatternSpec s128 = CoveringPatternSpec::for_k(128);
  CHECK(s128.rho == doctest::Approx(std::pow(std::log(128.0) / 128.0, 0.25)).epsilon(1e-12));
  CHECK(s128.dom_bound() ==
        doctest::Approx(4.5 * std::pow(128.0, 0.75) * std::pow(std::log(128.0), 0.25))
            .epsilon(1e-12));
}

TEST_CASE("four sets validate size and range") {
  CHECK(FourSet(four(0, 1, 2, 3), 68).indices() == std::vector<int>{0, 1, 2, 3});
  CHECK_THROWS_AS(FourSet(Block(std::vector<int>{0, 1, 2}), 68), std::invalid_argument);
  CHECK_THROWS_AS(FourSet(four(0, 1, 2, 68), 68), std::invalid_argument);
}

TEST_CASE("sampled patterns live on the window") {
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(128);
  const Pattern p = sample_pattern(spec, 7, 300);
  CHECK(p.length() == 300);
  for (int i = spec.window_length(); i < 300; ++i) CHECK(!p.defined(i));
  CHECK(sample_pattern(spec, 7, 300) == p);

  SUBCASE("mean domain size tracks the per-value probability") {
    SplitRng rng(100);
    double total = 0.0;
    const int samples = 1000;
    for (int t = 0; t < samples; ++t) {
      total += sample_pattern(spec, rng, spec.window_length()).domain_size();
    }
    const double expected = spec.window_length() * 2.0 * spec.rho;
    CHECK(total / samples == doctest::Approx(expected).epsilon(0.05));
  }
}

TEST_CASE("balanced copy search") {
  const Pattern p = defined_prefix("0011", 135);
  SUBCASE("direct hit at offset zero") {
    const auto u = has_balanced_copy(p, FourSet(four(0, 1, 2, 3), 68), 68);
    REQUIRE(u.has_value());
    CHECK(*u == 0);
  }
  SUBCASE("unbalanced values are rejected") {
    const Pattern q = defined_prefix("0001", 135);
    CHECK(!has_balanced_copy(q, FourSet(four(0, 1, 2, 3), 68), 68).has_value());
  }
  SUBCASE("offsets may be negative") {
    const Pattern q = defined_prefix("0011", 19);
    const auto u = has_balanced_copy(q, FourSet(four(5, 6, 7, 8), 10), 10);
    REQUIRE(u.has_value());
    CHECK(*u == -5);
  }
}

TEST_CASE("coverage checkers agree on hand instances") {
  for (CoverageAlgorithm algorithm : {CoverageAlgorithm::naive, CoverageAlgorithm::indexed}) {
    const CoverageCheckResult empty =
        full_coverage_check(Pattern::all_star(135), 68, algorithm);
    CHECK(!empty.ok);
    REQUIRE(empty.counterexample.has_value());
    CHECK(empty.counterexample->elements() == four(0, 1, 2, 3));

    const CoverageCheckResult tiny =
        full_coverage_check(defined_prefix("0011", 135), 68, algorithm);
    CHECK(!tiny.ok);
    REQUIRE(tiny.counterexample.has_value());
    CHECK(tiny.counterexample->elements() == four(0, 1, 2, 4));
  }
}

TEST_CASE("coverage checkers agree on random instances") {
  SplitRng rng(2000);
  int covered = 0;
  for (int t = 0; t < 1000; ++t) {
    const int k = 8 + static_cast<int>(rng.below(21));
    const int len = 2 * k - 1;
    const int dom = static_cast<int>(rng.below(static_cast<std::uint64_t>(len)));
    const Pattern p = dom == 0 ? Pattern::all_star(len) : random_pattern(rng, len, dom);
    const CoverageCheckResult naive = full_coverage_check(p, k, CoverageAlgorithm::naive);
    const CoverageCheckResult indexed = full_coverage_check(p, k, CoverageAlgorithm::indexed);
    CHECK(naive.ok == indexed.ok);
    if (!naive.ok) {
      REQUIRE(naive.counterexample.has_value());
      REQUIRE(indexed.counterexample.has_value());
      CHECK(naive.counterexample->elements() == indexed.counterexample->elements());
    } else {
      ++covered;
    }
  }
  CHECK(covered > 0);  // dense draws do reach full coverage at small k
}

TEST_CASE("indexed checker respects its enumeration cap") {
  const Pattern p = sample_pattern(CoveringPatternSpec::for_k(128), 7, 255);
  CHECK_THROWS_AS(full_coverage_check(p, 128, CoverageAlgorithm::indexed, 10),
                  resource_limit_error);
}

TEST_CASE("covering pattern construction") {
  const CoveringPatternSpec spec = CoveringPatternSpec::for_k(128);
  const PatternConstructionReport report = construct_covering_pattern(spec, 3, 200);
  CHECK(report.k == 128);
  CHECK(report.coverage_verified);
  CHECK(report.attempts >= 1);
  CHECK(report.dom_size == report.pattern.domain_size());
  CHECK(static_cast<double>(report.dom_size) <= report.bound);
  for (int i : report.pattern.domain()) CHECK(i < spec.window_length());
  CHECK(full_coverage_check(report.pattern, 128, CoverageAlgorithm::naive).ok);
  CHECK(full_coverage_check(report.pattern, 128, CoverageAlgorithm::indexed).ok);

  const PatternConstructionReport again = construct_covering_pattern(spec, 3, 200);
  CHECK(again.pattern == report.pattern);
  CHECK(again.attempts == report.attempts);

  try {
    construct_covering_pattern(spec, 3, 0);
    FAIL("expected construction_failure");
  } catch (const construction_failure& e) {
    CHECK(e.attempts() == 0);
  }
}

TEST_CASE("family size parameter") {
  CHECK(k_for_length(4096) == 86);
  CHECK(min_supported_length() == 2629);
  CHECK(k_for_length(2628) == 67);
  CHECK(k_for_length(2629) == 68);
  CHECK_THROWS_AS(k_for_length(1), std::invalid_argument);
}

TEST_CASE("embedding pads with undefined positions") {
  CHECK(embed_in_length(Pattern("01*"), 6).text() == "01****");
  CHECK_THROWS_AS(embed_in_length(Pattern("0101"), 3), std::invalid_argument);
}

TEST_CASE("low block-sensitivity function assembly") {
  CHECK_THROWS_WITH_AS(build_low_bs_function(1000, 1),
                       doctest::Contains("2629"), std::invalid_argument);

  const LowBsBuild build = build_low_bs_function(4096, 2);
  CHECK(build.k == 86);
  CHECK(build.function.length() == 4096);
  CHECK(build.report.coverage_verified);
  const Pattern& p = build.function.pattern();
  CHECK(p.domain_size() == build.report.dom_size);
  for (int i : p.domain()) CHECK(i < 2 * 86 - 1);
  CHECK(static_cast<double>(p.domain_size()) <= build.report.bound);
  CHECK(full_coverage_check(p, 86, CoverageAlgorithm::indexed).ok);
}

TEST_CASE("dense circular window extraction") {
  SUBCASE("everything inside one window") {
    const WindowFourSet w = dense_interval_4set(four(0, 1, 2, 3), 10, 10);
    CHECK(w.offset == 0);
    CHECK(w.four_set.elements() == four(0, 1, 2, 3));
  }
  SUBCASE("the averaging precondition is enforced") {
    CHECK_THROWS_AS(dense_interval_4set(four(0, 1, 2, 3), 10, 100), std::invalid_argument);
  }
  SUBCASE("evenly spaced points at the exact average") {
    std::vector<int> spaced;
    for (int e = 0; e < 400; e += 10) spaced.push_back(e);
    const WindowFourSet w = dense_interval_4set(Block(spaced), 40, 400);
    CHECK(w.offset == 0);
    CHECK(w.four_set.elements() == four(0, 10, 20, 30));
  }
  SUBCASE("windows may wrap around") {
    const Block s(std::vector<int>{0, 1, 2, 9, 10, 11});
    const WindowFourSet w = dense_interval_4set(s, 8, 12);
    CHECK(w.offset == 5);
    CHECK(w.four_set.elements() == four(4, 5, 6, 7));
    for (int e : w.four_set.indices()) {
      CHECK(e < 8);
      CHECK(s.contains((w.offset + e) % 12));
    }
  }
}

TEST_CASE("witness shift sets") {
  const MintermFunction f(GroupSpec::cyclic(6), Pattern("11****"));
  const BitString zeros("000000");
  const std::vector<Block> blocks{Block(std::vector<int>{0, 1}), Block(std::vector<int>{2, 3}),
                                  Block(std::vector<int>{4, 5})};

  CHECK(witness_to_shift_set(f, zeros, blocks) == Block(std::vector<int>{0, 2, 4}));
  CHECK(witness_to_shift_set(f, zeros, {blocks[1]}) == Block(std::vector<int>{4}));
  CHECK(witness_to_shift_set(f, zeros, blocks, 0) == Block(std::vector<int>{0, 2, 4}));

  CHECK_THROWS_AS(witness_to_shift_set(f, BitString("110000"), blocks), std::invalid_argument);
  CHECK_THROWS_AS(
      witness_to_shift_set(f, zeros, {Block(std::vector<int>{0, 1}), Block(std::vector<int>{1, 2})}),
      std::invalid_argument);
  CHECK_THROWS_AS(witness_to_shift_set(f, zeros, {Block(std::vector<int>{0, 2})}),
                  std::invalid_argument);

  const MintermFunction g(GroupSpec::explicit_group({Permutation::cyclic(6, 1)}),
                          Pattern("11****"));
  CHECK_THROWS_AS(witness_to_shift_set(g, zeros, blocks), std::invalid_argument);
}
