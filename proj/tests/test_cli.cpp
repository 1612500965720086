#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

std::string g_bin;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string out_file = "cli_test_out.tmp";
  std::string cmd = env + " \"" + g_bin + "\" " + args + " > " + out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream f(out_file, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::remove(out_file.c_str());
#ifdef _WIN32
  return {rc, ss.str()};
#else
  return {WEXITSTATUS(rc), ss.str()};
#endif
}

std::string fx(const char* name) {
  return std::string("\"") + FIXTURE_DIR "/" + name + "\"";
}

}  // namespace

TEST_CASE("exit codes across the fixture corpus") {
  CHECK(run("check " + fx("tca_a.net")).exit_code == 0);
  CHECK(run("check " + fx("tca_b.net")).exit_code == 0);
  CHECK(run("check " + fx("tca_c.net")).exit_code == 0);
  CHECK(run("check " + fx("tca_d.net")).exit_code == 2);
  CHECK(run("check " + fx("repressilator.net")).exit_code == 0);
  CHECK(run("check " + fx("orientation.net")).exit_code == 0);
  CHECK(run("check " + fx("storeq.net")).exit_code == 2);
  CHECK(run("check " + fx("srone.net")).exit_code == 0);
  CHECK(run("check " + fx("figreversible_a.net")).exit_code == 2);
  CHECK(run("check " + fx("figreversible_b.net")).exit_code == 0);
  CHECK(run("check " + fx("jacobian_61.net")).exit_code == 0);
  CHECK(run("check " + fx("ab_62.net")).exit_code == 0);
}

TEST_CASE("usage and parse failures exit 1") {
  CHECK(run("").exit_code == 1);
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("check /no/such/file.net").exit_code == 1);
  RunResult bad = run("check - < /dev/null");
  // Empty model: no species, no reactions - analyzable, trivially safe.
  CHECK(bad.exit_code == 0);
  std::ofstream("cli_bad.net") << "species A\nreaction R1: A -> Q\n";
  RunResult parse = run("check cli_bad.net");
  CHECK(parse.exit_code == 1);
  CHECK(parse.out.find("line 2") != std::string::npos);
  std::remove("cli_bad.net");
}

TEST_CASE("JSON output parses and matches the text verdict") {
  for (const char* name : {"tca_d.net", "storeq.net", "srone.net",
                           "repressilator.net", "jacobian_61.net"}) {
    CAPTURE(name);
    RunResult r = run("check --format json " + fx(name));
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["exit-code"] == r.exit_code);
    CHECK(j.contains("star"));
    CHECK(j.contains("conclusions"));
  }
}

TEST_CASE("named witness cycle appears in the report") {
  RunResult r = run("check " + fx("tca_d.net"));
  for (const char* v : {"OAA", "R6", "FUM", "R7", "MAL", "R8", "NADH", "R3",
                        "αKG", "R9"}) {
    CAPTURE(v);
    CHECK(r.out.find(v) != std::string::npos);
  }
}

TEST_CASE("DOT export is byte-stable and honors --out") {
  RunResult a = run("dot " + fx("tca_a.net"));
  RunResult b = run("dot " + fx("tca_a.net"));
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("digraph") != std::string::npos);
  run("dot --out cli_dot.tmp " + fx("srone.net"));
  std::ifstream f("cli_dot.tmp", std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("shape=box") != std::string::npos);
  std::remove("cli_dot.tmp");
}

TEST_CASE("lint and matrices subcommands") {
  RunResult lint = run("lint " + fx("srone.net"));
  CHECK(lint.exit_code == 0);
  CHECK(lint.out.find("no findings") != std::string::npos);
  RunResult mats = run("matrices --format json " + fx("storeq.net"));
  nlohmann::json j = nlohmann::json::parse(mats.out);
  CHECK(j["S"].size() == 3);
  CHECK(j["V"].size() == 3);
}

TEST_CASE("oracle subcommand reports per-suite counts") {
  RunResult r = run("oracle prodformula --seed 42 --cases 25");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("prodformula: 25/25 pass (seed 42)") != std::string::npos);
  RunResult all = run("oracle all --seed 5 --cases 5 --format json");
  nlohmann::json j = nlohmann::json::parse(all.out);
  CHECK(j["failures"] == 0);
  CHECK(j["suites"].size() == 8);
  CHECK(run("oracle bogus-suite").exit_code == 1);
}

TEST_CASE("environment cap override forces the inconclusive exit") {
  RunResult r = run("check " + fx("tca_d.net"), "DSR_ANALYZER_CAP=3");
  CHECK(r.exit_code == 3);
  CHECK(run("check " + fx("tca_d.net"), "DSR_ANALYZER_CAP=nonsense").exit_code == 1);
  // An explicit flag value behaves identically.
  CHECK(run("check --cycle-cap 3 " + fx("tca_d.net")).exit_code == 3);
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  int consumed = 0;
  for (int i = 1; i < argc; ++i) {
    if (argv[i][0] != '-' && g_bin.empty()) {
      g_bin = argv[i];
      consumed = i;
    }
  }
  if (g_bin.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-dsr-analyzer>\n");
    return 1;
  }
  (void)consumed;
  ctx.applyCommandLine(1, argv);
  return ctx.run();
}
