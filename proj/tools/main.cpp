#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtbs/dependency_bound.hpp"
#include "mtbs/lower_bound.hpp"
#include "mtbs/sensitivity.hpp"
#include "mtbs/upper_bound.hpp"
#include "mtbs/verify.hpp"

namespace {

using Record = nlohmann::ordered_json;

void emit_error(const char* kind, const std::string& message) {
  const nlohmann::json j{{"error", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_value(const Record& value) {
  if (value.is_string()) return csv_escape(value.get<std::string>());
  return value.dump();
}

// One record per line: a JSON object, or a CSV header plus one row.
std::string render_record(const Record& record, const std::string& format) {
  if (format == "json") return record.dump() + "\n";
  std::string header;
  std::string row;
  for (auto it = record.begin(); it != record.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    row += csv_value(it.value());
  }
  return header + "\n" + row + "\n";
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool entropy) {
  if (seed) return *seed;
  if (!entropy) {
    throw std::invalid_argument(
        "--seed is required for randomized runs (pass --entropy to draw one)");
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

// The pattern text, optionally padded with '*' up to length n.
mtbs::Pattern pattern_for_length(const std::string& text, const std::optional<int>& n) {
  mtbs::Pattern p(text);
  if (!n || *n == p.length()) return p;
  if (*n < p.length()) {
    throw std::invalid_argument("--n is smaller than the pattern length");
  }
  return mtbs::embed_in_length(p, *n);
}

std::string blocks_text(const std::vector<mtbs::Block>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i > 0) out += '|';
    out += blocks[i].text();
  }
  return out;
}

std::vector<int> parse_length_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const int value = std::stoi(token, &used);
      if (used != token.size() || value < 2) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("--n-list: invalid length '" + token + "'");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("--n-list: at least one length required");
  return out;
}

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  bool entropy = false;
  std::string out;
  std::string format = "json";
  int jobs = 1;
};

void add_common(CLI::App* sub, CommonFlags& flags, bool randomized, bool with_format) {
  sub->add_option("--out", flags.out, "Write the output to this file instead of stdout");
  if (randomized) {
    sub->add_option("--seed", flags.seed, "Seed for the random generator");
    sub->add_flag("--entropy", flags.entropy, "Draw a seed from the system instead of --seed");
  }
  if (with_format) {
    sub->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Minterm-cyclic boolean function toolkit"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the function on one input");
  std::string eval_pattern;
  std::string eval_x;
  CommonFlags eval_flags;
  eval_cmd->add_option("--pattern", eval_pattern, "Pattern over {0,1,*}")->required();
  eval_cmd->add_option("--x", eval_x, "Binary input")->required();
  add_common(eval_cmd, eval_flags, false, false);

  // measure
  auto* measure_cmd = app.add_subcommand("measure", "Sensitivity and block sensitivity");
  std::string measure_pattern;
  std::optional<int> measure_n;
  std::optional<std::string> measure_x;
  int measure_bruteforce_limit = 18;
  std::uint64_t measure_sweep_limit = std::uint64_t{1} << 20;
  CommonFlags measure_flags;
  measure_cmd->add_option("--pattern", measure_pattern, "Pattern over {0,1,*}")->required();
  measure_cmd->add_option("--n", measure_n, "Function length (pads the pattern with '*')");
  measure_cmd->add_option("--x", measure_x, "Report a single input instead of the global sweep");
  measure_cmd->add_option("--bruteforce-limit", measure_bruteforce_limit,
                          "Largest n for brute-force block enumeration");
  measure_cmd->add_option("--sweep-limit", measure_sweep_limit,
                          "Largest input count 2^n for global sweeps");
  measure_cmd->add_option("--jobs", measure_flags.jobs, "Worker threads for the global sweep");
  add_common(measure_cmd, measure_flags, false, true);

  // lower-witness
  auto* lower_cmd = app.add_subcommand("lower-witness", "Certified disjoint sensitive blocks");
  std::string lower_pattern;
  std::optional<int> lower_n;
  int lower_max_retries = 50;
  double lower_slack = 1.0;
  CommonFlags lower_flags;
  lower_cmd->add_option("--pattern", lower_pattern, "Pattern over {0,1,*}")->required();
  lower_cmd->add_option("--n", lower_n, "Function length (pads the pattern with '*')");
  lower_cmd->add_option("--max-retries", lower_max_retries, "Shift-selection attempts");
  lower_cmd->add_option("--slack", lower_slack, "Multiplier on the selection thresholds");
  add_common(lower_cmd, lower_flags, true, true);

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "Covering pattern by rejection sampling");
  int construct_k = 0;
  int construct_max_attempts = 200;
  double construct_c = 4.5;
  CommonFlags construct_flags;
  construct_cmd->add_option("--k", construct_k, "Coverage parameter k >= 68")->required();
  construct_cmd->add_option("--max-attempts", construct_max_attempts, "Sampling attempts");
  construct_cmd->add_option("--c", construct_c, "Domain-size bound constant");
  add_common(construct_cmd, construct_flags, true, true);

  // build-f
  auto* build_cmd = app.add_subcommand("build-f", "Low block-sensitivity function family member");
  int build_n = 0;
  int build_max_attempts = 200;
  CommonFlags build_flags;
  build_cmd->add_option("--n", build_n, "Function length")->required();
  build_cmd->add_option("--max-attempts", build_max_attempts, "Sampling attempts");
  add_common(build_cmd, build_flags, true, true);

  // janson
  auto* janson_cmd = app.add_subcommand("janson", "Dependency-graph bound and Monte Carlo check");
  int janson_k = 0;
  std::string janson_a = "0,1,2,3";
  std::uint64_t janson_trials = 0;
  CommonFlags janson_flags;
  janson_cmd->add_option("--k", janson_k, "Translate family size")->required();
  janson_cmd->add_option("--a", janson_a, "4-set, comma separated");
  janson_cmd->add_option("--trials", janson_trials, "Monte Carlo trials")->required();
  janson_cmd->add_option("--jobs", janson_flags.jobs, "Worker threads for the trials");
  add_common(janson_cmd, janson_flags, true, true);

  // scaling
  auto* scaling_cmd = app.add_subcommand("scaling", "Witness counts across lengths, as CSV");
  std::string scaling_n_list;
  std::optional<int> scaling_dom_size;
  int scaling_max_retries = 50;
  double scaling_slack = 1.0;
  CommonFlags scaling_flags;
  scaling_cmd->add_option("--n-list", scaling_n_list, "Comma-separated lengths")->required();
  scaling_cmd->add_option("--dom-size", scaling_dom_size,
                          "Pattern domain size (default floor(n^(3/7)) per length)");
  scaling_cmd->add_option("--max-retries", scaling_max_retries, "Shift-selection attempts");
  scaling_cmd->add_option("--slack", scaling_slack, "Multiplier on the selection thresholds");
  add_common(scaling_cmd, scaling_flags, true, false);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Oracle-equivalence and invariant suites");
  std::string verify_level = "quick";
  CommonFlags verify_flags;
  verify_cmd->add_option("--level", verify_level, "Suite strength")
      ->check(CLI::IsMember({"quick", "full"}));
  add_common(verify_cmd, verify_flags, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    emit_error("invalid-argument", e.what());
    return 2;
  }

  if (app.got_subcommand(eval_cmd)) {
    const mtbs::BitString x(eval_x);
    const mtbs::Pattern p = pattern_for_length(eval_pattern, x.length());
    const mtbs::MintermFunction f(mtbs::GroupSpec::cyclic(x.length()), p);
    write_output(eval_flags.out, std::to_string(f.eval(x)) + "\n");
    return 0;
  }

  if (app.got_subcommand(measure_cmd)) {
    const mtbs::Pattern p = pattern_for_length(measure_pattern, measure_n);
    const mtbs::MintermFunction f(mtbs::GroupSpec::cyclic(p.length()), p);
    mtbs::SensitivityLimits limits;
    limits.bruteforce_n_limit = measure_bruteforce_limit;
    limits.sweep_input_limit = measure_sweep_limit;
    Record record;
    if (measure_x) {
      const mtbs::BitString x(*measure_x);
      const int value = f.eval(x);
      const mtbs::BsMode mode =
          value == 0 ? mtbs::BsMode::structured_zero : mtbs::BsMode::bruteforce;
      const mtbs::BlockSensitivityWitness witness = mtbs::bs_at(f, x, mode, limits);
      record["n"] = p.length();
      record["x"] = x.text();
      record["value"] = value;
      record["s"] = mtbs::sensitivity_at(f, x);
      record["bs"] = witness.count();
      record["mode"] = value == 0 ? "structured_zero" : "bruteforce";
      record["witness_blocks"] = blocks_text(witness.blocks());
    } else {
      const mtbs::SensitivityReport report = mtbs::global_measures(f, limits, measure_flags.jobs);
      const mtbs::BlockSensitivityWitness& witness =
          report.bs0 >= report.bs1 ? *report.witness0 : *report.witness1;
      record["n"] = report.n;
      record["s"] = report.s;
      record["bs0"] = report.bs0;
      record["bs1"] = report.bs1;
      record["bs"] = report.bs;
      record["witness_input"] = witness.input().text();
      record["witness_blocks"] = blocks_text(witness.blocks());
    }
    write_output(measure_flags.out, render_record(record, measure_flags.format));
    return 0;
  }

  if (app.got_subcommand(lower_cmd)) {
    const std::uint64_t seed = resolve_seed(lower_flags.seed, lower_flags.entropy);
    const mtbs::Pattern p = pattern_for_length(lower_pattern, lower_n);
    const mtbs::MintermFunction f(mtbs::GroupSpec::cyclic(p.length()), p);
    const mtbs::LowerBoundReport report =
        mtbs::lower_bound_pipeline(f, seed, lower_max_retries, lower_slack);
    Record record;
    record["n"] = report.n;
    record["dom_size"] = report.dom_size;
    record["branch"] = mtbs::to_string(report.branch);
    record["t0"] = report.t0;
    record["t_final"] = report.t_final;
    record["witness_count"] = report.witness_count;
    record["threshold_half_dom"] = report.threshold_half_dom;
    record["threshold_twelfth"] = report.threshold_twelfth;
    record["threshold_quarter"] = report.threshold_quarter;
    record["seed"] = report.seed;
    record["retries"] = report.retries;
    record["witness_input"] = report.witness.input().text();
    record["witness_blocks"] = blocks_text(report.witness.blocks());
    write_output(lower_flags.out, render_record(record, lower_flags.format));
    return 0;
  }

  if (app.got_subcommand(construct_cmd)) {
    const std::uint64_t seed = resolve_seed(construct_flags.seed, construct_flags.entropy);
    const mtbs::CoveringPatternSpec spec =
        mtbs::CoveringPatternSpec::for_k(construct_k, construct_c);
    const mtbs::PatternConstructionReport report =
        mtbs::construct_covering_pattern(spec, seed, construct_max_attempts);
    Record record;
    record["k"] = report.k;
    record["rho"] = report.rho;
    record["attempts"] = report.attempts;
    record["dom_size"] = report.dom_size;
    record["bound"] = report.bound;
    record["coverage_verified"] = report.coverage_verified;
    record["seed"] = report.seed;
    record["pattern"] = report.pattern.text();
    write_output(construct_flags.out, render_record(record, construct_flags.format));
    return 0;
  }

  if (app.got_subcommand(build_cmd)) {
    const std::uint64_t seed = resolve_seed(build_flags.seed, build_flags.entropy);
    const mtbs::LowBsBuild build = mtbs::build_low_bs_function(build_n, seed, build_max_attempts);
    Record record;
    record["n"] = build_n;
    record["k"] = build.k;
    record["rho"] = build.report.rho;
    record["attempts"] = build.report.attempts;
    record["dom_size"] = build.report.dom_size;
    record["bound"] = build.report.bound;
    record["coverage_verified"] = build.report.coverage_verified;
    record["seed"] = build.report.seed;
    record["pattern"] = build.function.pattern().text();
    write_output(build_flags.out, render_record(record, build_flags.format));
    return 0;
  }

  if (app.got_subcommand(janson_cmd)) {
    const std::uint64_t seed = resolve_seed(janson_flags.seed, janson_flags.entropy);
    const mtbs::FourSet a(mtbs::Block::parse(janson_a), janson_k);
    const mtbs::JansonStats stats = mtbs::janson_stats(janson_k, a);
    const mtbs::MonteCarloResult mc =
        mtbs::monte_carlo_zero_probability(janson_k, a, janson_trials, seed, janson_flags.jobs);
    Record record;
    record["k"] = stats.k;
    record["a"] = a.elements().text();
    record["mu"] = stats.mu;
    record["delta"] = stats.delta_max;
    record["big_delta"] = stats.big_delta;
    record["bound"] = stats.bound;
    record["estimate"] = mc.estimate;
    record["stderr"] = mc.standard_error;
    record["trials"] = mc.trials;
    record["seed"] = seed;
    record["verdict"] = mc.verdict;
    write_output(janson_flags.out, render_record(record, janson_flags.format));
    return 0;
  }

  if (app.got_subcommand(scaling_cmd)) {
    const std::uint64_t seed = resolve_seed(scaling_flags.seed, scaling_flags.entropy);
    const std::vector<int> lengths = parse_length_list(scaling_n_list);
    std::string out =
        "n,dom_size,branch,t0,t_final,witness_count,bs1_bound,"
        "threshold_half_dom,threshold_twelfth,threshold_quarter,seed,retries\n";
    for (int n : lengths) {
      const int dom_size = scaling_dom_size ? *scaling_dom_size : mtbs::floor_pow_3_7(n);
      mtbs::SplitRng rng = mtbs::SplitRng::substream(seed, static_cast<std::uint64_t>(n));
      const mtbs::Pattern p = mtbs::random_pattern(rng, n, dom_size);
      const mtbs::MintermFunction f(mtbs::GroupSpec::cyclic(n), p);
      const mtbs::LowerBoundReport report = mtbs::lower_bound_pipeline(
          f, seed + static_cast<std::uint64_t>(n), scaling_max_retries, scaling_slack);
      out += std::to_string(report.n) + "," + std::to_string(report.dom_size) + "," +
             mtbs::to_string(report.branch) + "," + std::to_string(report.t0) + "," +
             std::to_string(report.t_final) + "," + std::to_string(report.witness_count) + "," +
             std::to_string(report.dom_size) + "," +
             std::to_string(report.threshold_half_dom) + "," +
             std::to_string(report.threshold_twelfth) + "," +
             std::to_string(report.threshold_quarter) + "," + std::to_string(seed) + "," +
             std::to_string(report.retries) + "\n";
    }
    write_output(scaling_flags.out, out);
    return 0;
  }

  if (app.got_subcommand(verify_cmd)) {
    const mtbs::VerifyLevel level =
        verify_level == "quick" ? mtbs::VerifyLevel::quick : mtbs::VerifyLevel::full;
    const std::vector<mtbs::CheckResult> results = mtbs::run_verification_suites(level);
    std::string out;
    bool all_pass = true;
    for (const mtbs::CheckResult& r : results) {
      all_pass = all_pass && r.pass;
      out += r.name + ": " + (r.pass ? "PASS" : "FAIL") + " (" + r.detail + ")\n";
    }
    write_output(verify_flags.out, out);
    return all_pass ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mtbs::construction_failure& e) {
    emit_error("construction-failure", e.what());
    return 3;
  } catch (const mtbs::resource_limit_error& e) {
    emit_error("resource-limit", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    emit_error("invalid-argument", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("verification-failure", e.what());
    return 1;
  }
}
