#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  std::string output;
  int exit_code = -1;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(MTBS_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, got);
  const int status = pclose(pipe);
  RunResult result;
  result.output = output;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("eval prints the function value") {
  const RunResult zero = run_cli("eval --pattern \"1***\" --x 0000");
  CHECK(zero.exit_code == 0);
  CHECK(zero.output == "0\n");
  const RunResult one = run_cli("eval --pattern \"1***\" --x 1000");
  CHECK(one.exit_code == 0);
  CHECK(one.output == "1\n");
}

TEST_CASE("measure emits the global report") {
  const RunResult r = run_cli("measure --pattern \"11****\" --n 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"n\":6"));
  CHECK(contains(r.output, "\"s\":4"));
  CHECK(contains(r.output, "\"bs0\":4"));
  CHECK(contains(r.output, "\"bs1\":2"));
  CHECK(contains(r.output, "\"bs\":4"));
  CHECK(contains(r.output, "\"witness_input\""));
  CHECK(contains(r.output, "\"witness_blocks\""));
}

TEST_CASE("measure reports a single input on request") {
  const RunResult r = run_cli("measure --pattern \"11****\" --n 6 --x 000000");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"value\":0"));
  CHECK(contains(r.output, "\"bs\":3"));
  CHECK(contains(r.output, "\"mode\":\"structured_zero\""));
}

TEST_CASE("measure csv output carries a stable header") {
  const RunResult r = run_cli("measure --pattern \"11****\" --n 6 --format csv");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,s,bs0,bs1,bs,witness_input,witness_blocks");
}

TEST_CASE("measure rejects a length below the pattern") {
  const RunResult r = run_cli("measure --pattern \"11****\" --n 4");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "\"error\":\"invalid-argument\""));
}

TEST_CASE("lower-witness runs the pipeline") {
  const RunResult r = run_cli("lower-witness --pattern \"0011\" --n 1000 --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"branch\":\"nicepack\""));
  CHECK(contains(r.output, "\"t0\":20"));
  CHECK(contains(r.output, "\"seed\":7"));
  CHECK(contains(r.output, "\"witness_blocks\""));
}

TEST_CASE("randomized subcommands insist on a seed") {
  const RunResult r = run_cli("lower-witness --pattern \"0011\" --n 1000");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "--seed"));

  const RunResult entropy = run_cli("lower-witness --pattern \"0011\" --n 1000 --entropy");
  CHECK(entropy.exit_code == 0);
}

TEST_CASE("construct reports below-minimum k as invalid arguments") {
  const RunResult r = run_cli("construct --k 4 --seed 1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "k below minimum 68"));
}

TEST_CASE("construct emits the full record") {
  const RunResult r = run_cli("construct --k 128 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"k\":128"));
  CHECK(contains(r.output, "\"attempts\":"));
  CHECK(contains(r.output, "\"coverage_verified\":true"));
  CHECK(contains(r.output, "\"pattern\":"));
}

TEST_CASE("construct maps an exhausted budget to exit code 3") {
  const RunResult r = run_cli("construct --k 128 --seed 3 --max-attempts 0");
  CHECK(r.exit_code == 3);
  CHECK(contains(r.output, "\"error\":\"construction-failure\""));
}

TEST_CASE("build-f validates the minimum length") {
  const RunResult r = run_cli("build-f --n 1000 --seed 1");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "2629"));

  const RunResult ok = run_cli("build-f --n 4096 --seed 2");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "\"k\":86"));
}

TEST_CASE("janson emits stats, estimate and verdict") {
  const RunResult r = run_cli("janson --k 128 --a \"0,1,2,3\" --trials 1000 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"mu\":"));
  CHECK(contains(r.output, "\"big_delta\":"));
  CHECK(contains(r.output, "\"verdict\":true"));
  CHECK(contains(r.output, "\"trials\":1000"));
}

TEST_CASE("scaling output is byte-identical across runs") {
  const std::string args = "scaling --n-list \"1024,2048,4096\" --seed 11";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  std::istringstream lines(a.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "n,dom_size,branch,t0,t_final,witness_count,bs1_bound,"
        "threshold_half_dom,threshold_twelfth,threshold_quarter,seed,retries");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("output lands in the requested file") {
  const std::string path = "/tmp/mtbs_cli_out_test.txt";
  std::remove(path.c_str());
  const RunResult r = run_cli("eval --pattern \"1***\" --x 0000 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "0\n");
  std::remove(path.c_str());
}

TEST_CASE("verify quick passes") {
  const RunResult r = run_cli("verify --level quick");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "oracle-equivalence: PASS"));
  CHECK(contains(r.output, "bs1-domain-bound: PASS"));
  CHECK(contains(r.output, "no-4-set: PASS"));
  CHECK(contains(r.output, "or-sanity: PASS"));
}

TEST_CASE("bad usage exits with code 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("eval --pattern \"1***\"").exit_code == 2);
  CHECK(run_cli("janson --k 128 --a \"0,1\" --trials 10 --seed 1").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
  const RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "eval"));
  CHECK(contains(r.output, "scaling"));
}
