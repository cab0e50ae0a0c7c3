#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "support/fixtures.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PPA_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string fx(const std::string& name) { return ppa_tests::fixture_path(name); }

}  // namespace

TEST_CASE("dims: the A2 table") {
  auto r = run_cli("dims --quiver " + fx("a2.quiver") + " --max-degree 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "t/d\t0\t1\t2\t3\n"
        "1\t2\t0\t0\t0\n"
        "2\t1\t1\t0\t0\n");
}

TEST_CASE("dims: single vertex") {
  std::string tmp = "/tmp/ppa_one_vertex.quiver";
  {
    FILE* f = fopen(tmp.c_str(), "w");
    fputs("vertices 1\n", f);
    fclose(f);
  }
  auto r = run_cli("dims --quiver " + tmp + " --max-degree 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "t/d\t0\t1\t2\n1\t1\t0\t0\n");
}

TEST_CASE("dims: json output is byte-identical across runs and carries provenance") {
  std::string args = "dims --quiver " + fx("kronecker.quiver") + " --max-degree 4 --format json --field 65521";
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == "ppa.dims/1");
  CHECK(j["tool_version"] == "0.1.0");
  CHECK(j["field"] == "F65521");
  CHECK(j["quiver"]["hash"].is_string());
  CHECK(j["seed"].is_number());
  CHECK(j["trials"].is_number());
  CHECK(j["dims"].size() == 2);
}

TEST_CASE("dims over the rationals") {
  auto r = run_cli("dims --quiver " + fx("a3_ff.quiver") + " --field rational --max-degree 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("t/d") == 0);
}

TEST_CASE("check ar on A2: one exact sequence") {
  auto r = run_cli("check ar --quiver " + fx("a2.quiver") + " --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"] == "PASS");
  REQUIRE(j["cells"].size() == 1);
  CHECK(j["cells"][0]["t"] == 2);
  CHECK(j["cells"][0]["d"] == 0);
  CHECK(j["cells"][0]["image_equals_kernel"] == true);
}

TEST_CASE("check maxrank on A2 over F_2: the expected-fail fixture is reported") {
  auto r = run_cli("check maxrank --quiver " + fx("a2.quiver") + " --mode exhaustive --p 2 --format json");
  CHECK(r.exit_code == 0);  // informational left_omnipresent failure does not fail the suite
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"] == "PASS");
  REQUIRE(j["cells"].size() == 1);
  const auto& cell = j["cells"][0];
  CHECK(cell["t"] == 2);
  CHECK(cell["d"] == 1);
  CHECK(cell["right_omnipresent"]["result"] == "PASS");
  CHECK(cell["left_general"]["result"] == "PASS");
  CHECK(cell["left_omnipresent"]["result"] == "FAIL");
  // the witness is span{beta}: the line through the second basis path
  auto basis = cell["left_omnipresent"]["witness"]["tuple"][0]["basis"];
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] == 0);
  CHECK(basis[0][1] == 1);
}

TEST_CASE("check bounds and hl-analog exit 0 on fixtures") {
  CHECK(run_cli("check bounds --quiver " + fx("a3_bf.quiver") + " --max-degree 4 --format json").exit_code == 0);
  CHECK(run_cli("check hl-analog --quiver " + fx("a3_bf.quiver") + " --max-degree 3 --trials 20 --format json").exit_code == 0);
}

TEST_CASE("check hl-poly") {
  auto r = run_cli("check hl-poly --r 2 --d 2 --trials 100 --seed 7 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["report"]["n"] == 2);
  CHECK(j["report"]["s"] == 2);
  CHECK(j["report"]["certificate"]["pass_fraction"] == 1.0);
  CHECK(j["result"] == "PASS");
}

TEST_CASE("usage and validation errors exit 2") {
  CHECK(run_cli("dims --quiver /nonexistent.quiver").exit_code == 2);
  CHECK(run_cli("check maxrank --quiver " + fx("a2.quiver") + " --field rational").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("check nosuchsuite --quiver " + fx("a2.quiver")).exit_code == 2);

  std::string bad = "/tmp/ppa_bad.quiver";
  {
    FILE* f = fopen(bad.c_str(), "w");
    fputs("vertices 2\narrow x: 1 -> 2\narrow y: 2 -> 1\n", f);
    fclose(f);
  }
  CHECK(run_cli("dims --quiver " + bad).exit_code == 2);  // oriented cycle
}
