#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "inq/cli.hpp"

using namespace inq;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"inq-verify"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string strip_duration(std::string s) {
  return std::regex_replace(s, std::regex("\"duration_ms\": \\d+"), "\"duration_ms\": X");
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("list-claims") { CHECK(run({"list-claims"}) == 0); }

TEST_CASE("usage errors exit 1") {
  CHECK(run({"verify", "--dims", "0"}) == 1);
  CHECK(run({"verify", "--claim", "not-a-claim", "--dims", "2"}) == 1);
  CHECK(run({"verify"}) == 1);  // dims required
  CHECK(run({"verify", "--claim", "decomposition", "--dims", "2,2"}) == 1);
}

TEST_CASE("confirmed claim exits 0 and writes a report") {
  const std::string out = "/tmp/inq_cli_test_a.json";
  CHECK(run({"verify", "--claim", "symmetric-span", "--dims", "2,2", "--seed", "42",
             "--format", "json", "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"claim\": \"symmetric-span\"") != std::string::npos);
  CHECK(text.find("\"status\": \"CONFIRMED\"") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("refuted claim exits 2, report still written") {
  const std::string out = "/tmp/inq_cli_test_b.json";
  CHECK(run({"verify", "--claim", "matrix-span", "--dims", "3", "--seed", "7",
             "--format", "json", "--out", out}) == 2);
  const std::string text = slurp(out);
  CHECK(text.find("\"status\": \"REFUTED\"") != std::string::npos);
  CHECK(text.find("\"provenance\": \"paper\"") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("same argv gives byte-identical json up to the timing field") {
  const std::string o1 = "/tmp/inq_cli_det1.json", o2 = "/tmp/inq_cli_det2.json";
  const std::vector<std::string> args = {"verify",   "--claim", "kernels", "--claim",
                                         "cnst",     "--dims",  "1,1,1",   "--seed",
                                         "123",      "--format", "json",   "--out"};
  auto a1 = args;
  a1.push_back(o1);
  auto a2 = args;
  a2.push_back(o2);
  CHECK(run(a1) == 0);
  CHECK(run(a2) == 0);
  const std::string s1 = slurp(o1), s2 = slurp(o2);
  CHECK(!s1.empty());
  CHECK(strip_duration(s1) == strip_duration(s2));
  std::remove(o1.c_str());
  std::remove(o2.c_str());
}

TEST_CASE("config file merges with flags overriding") {
  const std::string cfg = "/tmp/inq_cli_cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"claims":["kernels"],"dims":[2,3],"seed":5,"format":"json"})";
  }
  const std::string o1 = "/tmp/inq_cli_cfg1.json", o2 = "/tmp/inq_cli_cfg2.json";
  CHECK(run({"verify", "--config", cfg, "--seed", "99", "--out", o1}) == 0);
  CHECK(run({"verify", "--claim", "kernels", "--dims", "2,3", "--seed", "99",
             "--format", "json", "--out", o2}) == 0);
  CHECK(strip_duration(slurp(o1)) == strip_duration(slurp(o2)));
  std::remove(cfg.c_str());
  std::remove(o1.c_str());
  std::remove(o2.c_str());
}

TEST_CASE("text and json carry the same numbers") {
  const std::string oj = "/tmp/inq_cli_fmt.json", ot = "/tmp/inq_cli_fmt.txt";
  CHECK(run({"verify", "--claim", "kernels", "--dims", "2", "--seed", "1",
             "--format", "json", "--out", oj}) == 0);
  CHECK(run({"verify", "--claim", "kernels", "--dims", "2", "--seed", "1",
             "--format", "text", "--out", ot}) == 0);
  const std::string j = slurp(oj), t = slurp(ot);
  for (const char* needle : {"12", "9"}) {
    CHECK(j.find(needle) != std::string::npos);
    CHECK(t.find(needle) != std::string::npos);
  }
  CHECK(t.find("dim_joint: 9") != std::string::npos);
  CHECK(j.find("\"dim_joint\": 9") != std::string::npos);
  std::remove(oj.c_str());
  std::remove(ot.c_str());
}

TEST_CASE("verify with no claim list runs the applicable registry") {
  const std::string out = "/tmp/inq_cli_all.json";
  // dims (1,1): kernels, symmetric-span, ideal-left/right, delta, bulk-minus,
  // a1j (vacuous) apply; single-factor-only claims are skipped
  CHECK(run({"verify", "--dims", "1,1", "--seed", "11", "--format", "json",
             "--out", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"claim\": \"kernels\"") != std::string::npos);
  CHECK(text.find("\"claim\": \"symmetric-span\"") != std::string::npos);
  CHECK(text.find("\"claim\": \"decomposition\"") == std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("thread cap env var is honored") {
  setenv("INQ_VERIFY_THREADS", "1", 1);
  const std::string o1 = "/tmp/inq_cli_thr1.json";
  CHECK(run({"verify", "--claim", "kernels", "--dims", "2", "--seed", "8",
             "--format", "json", "--out", o1}) == 0);
  setenv("INQ_VERIFY_THREADS", "4", 1);
  const std::string o2 = "/tmp/inq_cli_thr4.json";
  CHECK(run({"verify", "--claim", "kernels", "--dims", "2", "--seed", "8",
             "--format", "json", "--out", o2}) == 0);
  unsetenv("INQ_VERIFY_THREADS");
  CHECK(strip_duration(slurp(o1)) == strip_duration(slurp(o2)));
  std::remove(o1.c_str());
  std::remove(o2.c_str());
}

TEST_CASE("decompose and delta subcommands") {
  const std::string out = "/tmp/inq_cli_dec.json";
  CHECK(run({"decompose", "--dims", "2", "--seed", "3", "--format", "json",
             "--out", out}) == 0);
  CHECK(slurp(out).find("\"claim\": \"decomposition\"") != std::string::npos);
  std::remove(out.c_str());
  CHECK(run({"delta", "--dims", "1,1", "--seed", "3", "--format", "json",
             "--out", out}) == 0);
  CHECK(slurp(out).find("\"claim\": \"delta\"") != std::string::npos);
  std::remove(out.c_str());
}

TEST_SUITE_END();
