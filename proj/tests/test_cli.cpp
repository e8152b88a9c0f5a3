#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using reefkit::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "reefkit_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("correlate constant functions") {
  const auto r = run({"correlate", "--f", "one", "--g", "one", "--N", "10", "--shifts", "1..3"});
  CHECK(r.code == 0);
  CHECK(r.out == "a,value\n1,10\n2,10\n3,10\n");
  const auto t = run({"correlate", "--f", "mu", "--g", "one", "--N", "10", "--shifts", "1,2", "--method", "expansion",
                      "--truncate", "5"});
  CHECK(t.code == 0);
  CHECK(run({"correlate", "--f", "mu", "--g", "one", "--N", "10", "--shifts", "1,2", "--method", "truncated", "--truncate",
             "5"})
            .out == t.out);
}

TEST_CASE("csum") {
  CHECK(run({"csum", "4", "8"}).out == "2\n");
  CHECK(run({"csum", "6", "4"}).out == "-1\n");
  const auto t = run({"csum", "--table", "3", "3"});
  CHECK(t.out == "q,1,2,3\n1,1,1,1\n2,-1,1,-1\n3,-1,-1,2\n");
  CHECK(run({"csum", "0", "3"}).code == 2);
}

TEST_CASE("usage and error exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"correlate", "--f", "one"}).code == 2);
  const auto dir = scratch();
  write(dir / "bad.ini", "[sieve]\nlimit = many\n");
  const auto bad = run({"--config", (dir / "bad.ini").string(), "sieve", "--limit", "5"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
  write(dir / "small.ini", "[sieve]\nlimit = 100\n");
  CHECK(run({"--config", (dir / "small.ini").string(), "sieve", "--limit", "101"}).code == 4);
  CHECK(run({"correlate", "--f", "lambda", "--g", "one", "--N", "10", "--shifts", "1"}).code == 0);
  CHECK(run({"correlate", "--f", (dir / "missing.csv").string(), "--g", "one", "--N", "10", "--shifts", "1"}).code == 2);
}

TEST_CASE("REEFKIT_CONFIG is honoured and --config wins") {
  const auto dir = scratch();
  write(dir / "tiny.ini", "[sieve]\nlimit = 50\n");
  write(dir / "roomy.ini", "[sieve]\nlimit = 500\n");
  setenv("REEFKIT_CONFIG", (dir / "tiny.ini").string().c_str(), 1);
  CHECK(run({"sieve", "--limit", "100"}).code == 4);
  CHECK(run({"--config", (dir / "roomy.ini").string(), "sieve", "--limit", "100"}).code == 0);
  unsetenv("REEFKIT_CONFIG");
}

TEST_CASE("expand with exactness check") {
  const auto dir = scratch();
  write(dir / "g.csv", "q,value\n1,1/2\n3,-2/3\n6,1\n");
  const auto r = run({"expand", "--support", (dir / "g.csv").string(), "--range", "6", "--check-fre", "200"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("l,coefficient\n1,4/9\n", 0) == 0);
  CHECK(r.err.find("pass") != std::string::npos);
}

TEST_CASE("reef, carmichael and diagnose-dh") {
  const auto dir = scratch();
  write(dir / "g30.csv", "q,value\n1,1\n2,-1/2\n3,1/3\n5,2\n6,1/7\n10,3\n15,-1\n30,1/5\n");
  const auto g = (dir / "g30.csv").string();
  CHECK(run({"carmichael", "--exact", "--f", "mu", "--g-support", g, "--N", "60", "--l", "1..30"}).code == 0);
  const auto even = run({"reef", "--f", "one", "--g-support", g, "--N", "60", "--shifts", "1..120"});
  CHECK(even.code == 0);
  CHECK(even.out.find(",0\n") != std::string::npos);
  CHECK(run({"reef", "--f", "mu", "--g-support", g, "--N", "60", "--coefficients"}).code == 0);
  CHECK(run({"carmichael", "--empirical", "--f", "one", "--g-support", g, "--N", "60", "--l", "1,2", "--x", "30,60"}).code ==
        0);
  CHECK(run({"carmichael", "--f", "one", "--g-support", g, "--N", "60", "--l", "1"}).code == 2);
  const auto dh = run({"diagnose-dh", "--f", "one", "--g-support", g, "--N", "60", "--d-max", "40"});
  CHECK(dh.code == 0);
  CHECK(dh.out.rfind("d,partial_sum,increment\n", 0) == 0);
}

TEST_CASE("twins and outputs") {
  const auto dir = scratch();
  const auto r = run({"--json", (dir / "t.json").string(), "twins", "--N", "10000", "--k", "1..3", "--l-max", "1000",
                      "--svg", (dir / "t.svg").string()});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("shift,correlation,prediction,ratio\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(slurp(dir / "t.svg").find("<svg") == 0);
  CHECK(slurp(dir / "t.json").find("\"columns\"") != std::string::npos);
  const auto c = run({"twins", "coefficients", "--N", "10000", "--q-max", "6"});
  CHECK(c.code == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 7);
}

TEST_CASE("verify identities") {
  const auto r = run({"verify", "--suite", "identities"});
  CHECK(r.code == 0);
  CHECK(r.out.find("fail") == std::string::npos);
}

TEST_CASE("sieve cache and check") {
  const auto dir = scratch();
  const auto cache = (dir / "s.bin").string();
  const auto a = run({"--sieve-cache", cache, "sieve", "--limit", "1000", "--check"});
  const auto b = run({"--sieve-cache", cache, "sieve", "--limit", "1000", "--check"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::filesystem::exists(cache));
}

}  // TEST_SUITE
