#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "vcshadow/constructions.hpp"
#include "vcshadow/io.hpp"

using namespace vcshadow;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(VCSHADOW_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "cli_fixture_" + name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("construct star emits the exact text format") {
  CliResult r = run_cli("construct star 3 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "n 3\n1 2\n1 3\n");
}

TEST_CASE("construct output reparses to the same family") {
  CliResult r = run_cli("construct ak 8 2");
  CHECK(r.exit_code == 0);
  SetSystem fam = parse_system(r.out);
  CHECK(fam.size() == 22);
  CHECK(fam.members == ak_candidate(8, 2).members);
}

TEST_CASE("vcdim on files in both formats") {
  const std::string full52 = write_temp("full52.txt", serialize_system_text(full_family(5, 2)));
  CliResult r = run_cli("vcdim " + full52);
  CHECK(r.exit_code == 0);
  CHECK(r.out == "vcdim=2 size=10 uniform=3\n");

  const std::string ball = write_temp("ball52.json", system_to_json(hamming_ball(5, 2)).dump());
  CliResult rj = run_cli("vcdim " + ball);
  CHECK(rj.exit_code == 0);
  CHECK(rj.out == "vcdim=2 size=16\n");

  const std::string empty = write_temp("empty.txt", "n 4\n");
  CliResult re = run_cli("vcdim " + empty);
  CHECK(re.exit_code == 0);
  CHECK(re.out == "vcdim=-1 size=0\n");
}

TEST_CASE("certify prints the chain and respects exit codes") {
  const std::string star62 = write_temp("star62.txt", serialize_system_text(star(6, 2)));
  CliResult r = run_cli("certify " + star62 + " 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "|F|=10 <= |shadow|=15 <= C(n,d)=15\n");

  const std::string full52 = write_temp("full52b.txt", serialize_system_text(full_family(5, 2)));
  CliResult rf = run_cli("certify " + full52 + " 2");
  CHECK(rf.exit_code == 0);
  CHECK(rf.out == "|F|=10 <= |shadow|=10 <= C(n,d)=10\n");

  // all triples on [6] shatter {1,2,3}: precondition failure, exit 3
  std::vector<Subset> mem;
  for_each_k_subset(GroundSet(6), 3, [&](Subset s) { mem.push_back(s); });
  const std::string c63 =
      write_temp("c63.txt", serialize_system_text(SetSystem(GroundSet(6), std::move(mem))));
  CliResult rb = run_cli("certify " + c63 + " 2");
  CHECK(rb.exit_code == 3);
}

TEST_CASE("certify json payload") {
  const std::string star62 = write_temp("star62j.txt", serialize_system_text(star(6, 2)));
  CliResult r = run_cli("certify " + star62 + " 2 --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["type"] == "shadow_certificate");
  CHECK(j["pass"] == true);
  CHECK(j["rank"] == 17);
  CHECK(j["version"].is_string());
}

TEST_CASE("kk output") {
  CliResult r = run_cli("kk 20 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "alpha=6 bound=15\n");

  CliResult rj = run_cli("kk 21 2 --format json");
  const auto j = nlohmann::json::parse(rj.out);
  CHECK(j["cascade_bound"] == "17");
  CHECK(j["alpha_integral"] == false);
}

TEST_CASE("audit output and sweep") {
  CliResult r = run_cli("audit 6 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "|Y|=5 required>=10 contradiction=confirmed\n");

  CliResult rs = run_cli("audit --sweep 3 10 --format csv");
  CHECK(rs.exit_code == 0);
  CHECK(rs.out.rfind("d,n,", 0) == 0);
  // rows: d=2 -> n in 6..10 (5 rows); d=3 -> n in 8..10 (3 rows); plus header
  int lines = 0;
  for (char c : rs.out) lines += (c == '\n');
  CHECK(lines == 9);
}

TEST_CASE("search json is byte-stable and honors the budget exit code") {
  CliResult a = run_cli("search 6 2 --format json");
  CliResult b = run_cli("search 6 2 --format json --threads 4");
  CHECK(a.exit_code == 0);
  const auto ja = nlohmann::json::parse(a.out);
  const auto jb = nlohmann::json::parse(b.out);
  CHECK(ja["best_size"] == jb["best_size"]);
  CHECK(ja["nodes"] == jb["nodes"]);
  CHECK(ja["family"] == jb["family"]);
  CHECK(ja["best_size"].get<long>() >= 11);
  CHECK(ja["best_size"].get<long>() <= 14);
  CHECK(ja["proved_optimal"] == true);

  CliResult tiny = run_cli("search 7 2 --budget 40");
  CHECK(tiny.exit_code == 4);
}

TEST_CASE("dmatrix verdict") {
  const std::string star82 = write_temp("star82.txt", serialize_system_text(star(8, 2)));
  CliResult r = run_cli("dmatrix " + star82 + " 2 2,3,4 -");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "det=3840 m0=6 singular<=>m0=1: consistent\n");

  CliResult rz = run_cli("dmatrix " + star82 + " 2 2,3,4 2,3");
  CHECK(rz.exit_code == 0);
  CHECK(rz.out == "det=-768 m0=0 singular<=>m0=1: consistent\n");

  CliResult bad = run_cli("dmatrix " + star82 + " 2 1,2,3 -");
  CHECK(bad.exit_code == 3);  // Y is a member
}

TEST_CASE("error exit codes") {
  const std::string broken = write_temp("broken.txt", "n 4\n1 9\n");
  CHECK(run_cli("vcdim " + broken).exit_code == 2);
  CHECK(run_cli("vcdim does_not_exist.txt").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("certify").exit_code == 1);
  CHECK(run_cli("construct ball 5 2 --format text").exit_code == 3);
  CHECK(run_cli("construct full 6 2").exit_code == 3);
}

TEST_CASE("construct ball defaults to json") {
  CliResult r = run_cli("construct ball 4 1");
  CHECK(r.exit_code == 0);
  SetSystem fam = parse_system(r.out);
  CHECK(fam.size() == 5);
  CHECK(fam.members[0] == Subset{});
}

TEST_CASE("out flag writes the payload to a file") {
  CliResult r = run_cli("construct star 5 2 --out cli_out_star52.txt");
  CHECK(r.exit_code == 0);
  std::ifstream f("cli_out_star52.txt", std::ios::binary);
  REQUIRE(f.good());
  std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(content == serialize_system_text(star(5, 2)));
}
