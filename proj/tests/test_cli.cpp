#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hetbaker::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("count and reduce print plain results") {
  auto r = run({"count", "--m", "2", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "48\n");

  CHECK(run({"reduce", "--word", "a1,b2"}).out == "ZERO\n");
  CHECK(run({"reduce", "--word", "a1,b1"}).out == "1\n");
  CHECK(run({"reduce", "--word", "b2,a1"}).out == "b2,a1\n");
  CHECK(run({"count", "--m", "2", "--units", "1", "--n", "2"}).out == "23\n");
}

TEST_CASE("enumerate streams branch-index words") {
  auto r = run({"enumerate", "--m", "2", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 14);
  CHECK(r.out.find("1,3\n") != std::string::npos);
  CHECK(r.out.find("1,4\n") == std::string::npos);

  CHECK(run({"enumerate", "--m", "2", "--n", "40"}).code == 2);
}

TEST_CASE("graph prints dot") {
  auto r = run({"graph", "--m", "2", "--depth", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digraph follower") != std::string::npos);
  CHECK(r.out.find("\"e\" -> \"1\"") != std::string::npos);
}

TEST_CASE("map iterates exact points") {
  auto r = run({"map", "--point", "1/10,1/2,2/5", "--n", "2", "--a", "1/4", "--b", "1/8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0,1,1/10,1/2,2/5\n") != std::string::npos);
  CHECK(r.out.find("1,2,2/5,1/4,3/10\n") != std::string::npos);

  // boundary points are a usage error, not a silent assignment
  CHECK(run({"map", "--point", "1/2,1/3,1/3", "--n", "1", "--a", "1/4", "--b", "1/8"}).code == 2);
  // decimals are rejected for exact-mode inputs
  CHECK(run({"map", "--point", "0.1,0.5,0.4", "--n", "1"}).code == 2);
}

TEST_CASE("cylinder and periodic emit exact json") {
  auto r = run({"cylinder", "--word", "1,3", "--a", "1/4", "--b", "1/8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"1/8\"") != std::string::npos);

  auto empty = run({"cylinder", "--word", "1,4", "--a", "1/4", "--b", "1/8"});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("\"empty\":true") != std::string::npos);

  auto orbit = run({"periodic", "--word", "1,3", "--a", "1/4", "--b", "1/8"});
  CHECK(orbit.code == 0);
  CHECK(orbit.out.find("\"x_star\":\"1/7\"") != std::string::npos);
  CHECK(run({"periodic", "--word", "1,4"}).code == 2);
}

TEST_CASE("sampling and stats are reproducible") {
  auto a = run({"sample", "--side", "alpha", "--n", "30", "--seed", "9"});
  auto b = run({"sample", "--side", "alpha", "--n", "30", "--seed", "9"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  auto lam = run({"sample", "--side", "beta", "--n", "10", "--seed", "9", "--law", "lambda"});
  CHECK(lam.code == 0);
  CHECK(lam.out.find("b") != std::string::npos);

  auto stats = run({"stats", "--side", "alpha", "--n", "20000", "--seed", "4", "--k", "4",
                    "--a", "1/4", "--b", "1/8"});
  CHECK(stats.code == 0);
  CHECK(stats.out.starts_with("# hetbaker-schema v1\n"));
  CHECK(stats.out.find("freq_alpha") != std::string::npos);
  auto stats2 = run({"stats", "--side", "alpha", "--n", "20000", "--seed", "4", "--k", "4",
                     "--a", "1/4", "--b", "1/8"});
  CHECK(stats.out == stats2.out);

  auto word_stats = run({"stats", "--word", "1,3,1,3", "--k", "1", "--a", "1/4", "--b", "1/8"});
  CHECK(word_stats.code == 0);
}

TEST_CASE("experiment subcommands return pass/fail exit codes") {
  auto verify = run({"verify-a", "--depth", "4", "--a", "1/4", "--b", "1/8"});
  CHECK(verify.code == 0);
  CHECK(verify.out.find("cylinder_iff_admissible_mismatches") != std::string::npos);

  auto growth = run({"growth", "--m", "2", "--units", "1", "--n-max", "10"});
  CHECK(growth.code == 0);
  CHECK(growth.out.find("ratio_10,4.2") != std::string::npos);  // approaches m+units+1 = 4

  auto approach = run({"approach", "--prefix-len", "100", "--j", "3", "--a", "1/4", "--b", "1/8"});
  CHECK(approach.code == 0);

  auto lebesgue = run({"lebesgue", "--n", "50000", "--seed", "2"});
  CHECK(lebesgue.code == 0);
  CHECK(lebesgue.out.find("lebesgue,2,0,1/3,1/6") != std::string::npos);
  CHECK(run({"lebesgue", "--n", "50000", "--a", "1/4", "--b", "1/8"}).code == 2);

  // a failing report row exits 1: the k=8 block-entropy row sits above the
  // log(m+1) band by the exact unresolved-subscript excess
  auto mme = run({"mme", "--n", "200000", "--k", "8", "--seed", "7", "--a", "1/4", "--b", "1/8"});
  CHECK(mme.code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"count", "--bogus-flag", "1"}).code == 2);
  CHECK(run({"mme", "--a", "0.25"}).code == 2);
  CHECK(run({"mme", "--a", "1/2"}).code == 2);
  CHECK(run({"reduce"}).code == 2);  // --word required
  CHECK(run({}).code == 2);

  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--seed") == std::string::npos);  // top level lists subcommands
  auto sub_help = run({"mme", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(sub_help.out.find("--seed") != std::string::npos);
  CHECK(sub_help.out.find("--threads") != std::string::npos);
}

TEST_CASE("config files merge under explicit flags") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hetbaker_cli_test";
  fs::create_directories(dir);
  fs::path config = dir / "config.json";
  {
    std::ofstream f(config);
    f << R"({"m": 2, "units": 1, "n": 2, "seed": 5})";
  }
  auto r = run({"count", "--config", config.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "23\n");  // Motzkin pair count from the config

  // an explicit flag wins over the config value
  auto r2 = run({"count", "--config", config.string(), "--units", "0"});
  CHECK(r2.out == "14\n");

  fs::path bad = dir / "bad.json";
  {
    std::ofstream f(bad);
    f << R"({"frobnicate": 1})";
  }
  CHECK(run({"count", "--config", bad.string()}).code == 2);

  fs::path badtol = dir / "badtol.json";
  {
    std::ofstream f(badtol);
    f << R"({"tolerances": {"no_such": 0.1}})";
  }
  CHECK(run({"count", "--config", badtol.string()}).code == 2);

  CHECK(run({"count", "--config", (dir / "missing.json").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("output files are written under --out") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hetbaker_cli_out";
  fs::remove_all(dir);
  auto r = run({"growth", "--m", "2", "--n-max", "8", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "growth.csv"));
  CHECK(fs::exists(dir / "growth.json"));
  CHECK(fs::exists(dir / "growth_curve.dat"));
  std::ifstream csv(dir / "growth.csv");
  std::string first_line;
  std::getline(csv, first_line);
  CHECK(first_line == "# hetbaker-schema v1");
  fs::remove_all(dir);
}
