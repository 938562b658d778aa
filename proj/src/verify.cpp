#include "mtbs/verify.hpp"

#include <cstdint>
#include <exception>
#include <sstream>
#include <string>

#include "mtbs/lower_bound.hpp"
#include "mtbs/rng.hpp"
#include "mtbs/sensitivity.hpp"
#include "mtbs/upper_bound.hpp"

namespace mtbs {

namespace {

constexpr std::uint64_t kSuiteSeed = 20260814;

// Calls fn(pattern) for every length-n pattern over {0,1,*} with nonempty
// domain, in base-3 counter order.
template <typename Fn>
void for_each_pattern(int n, Fn&& fn) {
  std::vector<Symbol> symbols(static_cast<std::size_t>(n), Symbol::zero);
  while (true) {
    bool all_star = true;
    for (Symbol s : symbols) all_star = all_star && s == Symbol::star;
    if (!all_star) fn(Pattern(symbols));

    int pos = 0;
    while (pos < n && symbols[static_cast<std::size_t>(pos)] == Symbol::star) {
      symbols[static_cast<std::size_t>(pos)] = Symbol::zero;
      ++pos;
    }
    if (pos == n) return;
    symbols[static_cast<std::size_t>(pos)] =
        static_cast<Symbol>(static_cast<int>(symbols[static_cast<std::size_t>(pos)]) + 1);
  }
}

}  // namespace

CheckResult check_oracle_equivalence(const std::vector<int>& lengths) {
  CheckResult result{"oracle-equivalence", true, ""};
  std::uint64_t patterns = 0;
  std::uint64_t zero_inputs = 0;
  try {
    for (int n : lengths) {
      for_each_pattern(n, [&](const Pattern& p) {
        ++patterns;
        MintermFunction f(GroupSpec::cyclic(n), p);
        TruthTable table(f);
        const std::uint32_t total = std::uint32_t{1} << n;
        for (std::uint32_t packed = 0; packed < total; ++packed) {
          if (table.value(packed) != 0) continue;
          ++zero_inputs;
          const BitString x = TruthTable::unpack(packed, n);
          const int structured = bs_at(f, x, BsMode::structured_zero, {}, &table).count();
          const int brute = bs_at(f, x, BsMode::bruteforce, {}, &table).count();
          if (structured != brute && result.pass) {
            result.pass = false;
            result.detail = "mismatch at pattern " + p.text() + ", input " + x.text() + ": " +
                            std::to_string(structured) + " vs " + std::to_string(brute);
          }
        }
      });
    }
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
    return result;
  }
  if (result.pass) {
    std::ostringstream out;
    out << patterns << " patterns, " << zero_inputs << " zero-inputs, exact agreement";
    result.detail = out.str();
  }
  return result;
}

CheckResult check_bs1_domain_bound(const std::vector<int>& lengths) {
  CheckResult result{"bs1-domain-bound", true, ""};
  std::uint64_t patterns = 0;
  std::uint64_t one_inputs = 0;
  try {
    for (int n : lengths) {
      for_each_pattern(n, [&](const Pattern& p) {
        ++patterns;
        MintermFunction f(GroupSpec::cyclic(n), p);
        TruthTable table(f);
        const std::uint32_t total = std::uint32_t{1} << n;
        for (std::uint32_t packed = 0; packed < total; ++packed) {
          if (table.value(packed) != 1) continue;
          ++one_inputs;
          const BitString x = TruthTable::unpack(packed, n);
          const int bs = bs_at(f, x, BsMode::bruteforce, {}, &table).count();
          if (bs > p.domain_size() && result.pass) {
            result.pass = false;
            result.detail = "pattern " + p.text() + ", input " + x.text() + ": bs " +
                            std::to_string(bs) + " exceeds domain size " +
                            std::to_string(p.domain_size());
          }
        }
      });
    }
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
    return result;
  }
  if (result.pass) {
    std::ostringstream out;
    out << patterns << " patterns, " << one_inputs << " one-inputs within the domain bound";
    result.detail = out.str();
  }
  return result;
}

CheckResult check_no_four_set(const std::vector<int>& lengths, int patterns_per_length,
                              std::uint64_t seed) {
  CheckResult result{"no-4-set", true, ""};
  std::uint64_t witnesses = 0;
  try {
    for (int n : lengths) {
      for (int t = 0; t < patterns_per_length; ++t) {
        SplitRng rng = SplitRng::substream(seed, static_cast<std::uint64_t>(n) * 1000 +
                                                     static_cast<std::uint64_t>(t));
        const int dom_size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Pattern p = random_pattern(rng, n, dom_size);
        MintermFunction f(GroupSpec::cyclic(n), p);
        TruthTable table(f);
        const std::uint32_t total = std::uint32_t{1} << n;
        for (std::uint32_t packed = 0; packed < total; ++packed) {
          if (table.value(packed) != 0) continue;
          const BitString x = TruthTable::unpack(packed, n);
          const BlockSensitivityWitness w = bs_at(f, x, BsMode::bruteforce, {}, &table);
          witness_to_shift_set(f, x, w.blocks());
          ++witnesses;
        }
      }
    }
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
    return result;
  }
  std::ostringstream out;
  out << witnesses << " witnesses mapped to shift sets without a covered 4-subset";
  result.detail = out.str();
  return result;
}

CheckResult check_or_sanity(int n_min, int n_max) {
  CheckResult result{"or-sanity", true, ""};
  try {
    for (int n = n_min; n <= n_max; ++n) {
      const Pattern p("1" + std::string(static_cast<std::size_t>(n - 1), '*'));
      MintermFunction f(GroupSpec::cyclic(n), p);
      const SensitivityReport report = global_measures(f);
      if (report.s != n || report.bs != n) {
        result.pass = false;
        result.detail = "n = " + std::to_string(n) + ": s = " + std::to_string(report.s) +
                        ", bs = " + std::to_string(report.bs) + ", expected both " +
                        std::to_string(n);
        return result;
      }
    }
  } catch (const std::exception& e) {
    result.pass = false;
    result.detail = std::string("exception: ") + e.what();
    return result;
  }
  result.detail = "s = bs = n for n in [" + std::to_string(n_min) + ", " +
                  std::to_string(n_max) + "]";
  return result;
}

std::vector<CheckResult> run_verification_suites(VerifyLevel level) {
  std::vector<CheckResult> results;
  if (level == VerifyLevel::quick) {
    results.push_back(check_oracle_equivalence({4, 5}));
    results.push_back(check_bs1_domain_bound({4, 5}));
    results.push_back(check_no_four_set({10}, 20, kSuiteSeed));
    results.push_back(check_or_sanity(4, 10));
  } else {
    results.push_back(check_oracle_equivalence({4, 5, 6}));
    results.push_back(check_bs1_domain_bound({4, 5, 6}));
    results.push_back(check_no_four_set({10, 12}, 100, kSuiteSeed));
    results.push_back(check_or_sanity(4, 14));
  }
  return results;
}

}  // namespace mtbs
