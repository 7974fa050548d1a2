#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* sim_bin() {
  const char* bin = std::getenv("SIM_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SIM_BIN must point at the command-line binary");
  return bin;
}

RunResult run_sim(const std::string& args) {
  const std::string out_path = "/tmp/ruc_cli_out.txt";
  const std::string err_path = "/tmp/ruc_cli_err.txt";
  const std::string cmd =
      std::string("\"") + sim_bin() + "\" " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace

TEST_CASE("help exits cleanly and names the subcommands") {
  const auto r = run_sim("--help");
  CHECK(r.exit_code == 0);
  for (const char* sub :
       {"depolarizing", "hamming", "tfim", "ancilla-compare", "variance-check"}) {
    CHECK(r.out.find(sub) != std::string::npos);
  }
}

TEST_CASE("missing subcommand is a usage error") {
  CHECK(run_sim("").exit_code == 2);
  CHECK(run_sim("--no-such-flag").exit_code == 2);
  CHECK(run_sim("depolarizing --bogus 3").exit_code == 2);
}

TEST_CASE("depolarizing run emits a full report") {
  const auto r = run_sim("depolarizing --n-min 1 --n-max 3 --shots 200 --seed 9");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(r.out);
  for (const char* key : {"config", "results", "oracle", "timing", "version", "seed"}) {
    CHECK(rep.contains(key));
  }
  CHECK(rep.at("config").at("experiment").get<std::string>() == "depolarizing-sweep");
  CHECK(rep.at("config").at("threads").is_number());
  CHECK(rep.at("seed").get<uint64_t>() == 9);
  CHECK(rep.at("results").size() == 3);
}

TEST_CASE("--out writes the same report to a file") {
  const std::string path = "/tmp/ruc_cli_report.json";
  const auto r = run_sim("hamming --n 4 --shots 300 --out " + path);
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(slurp(path));
  std::remove(path.c_str());
  CHECK(rep.at("config").at("experiment").get<std::string>() == "hamming");
  uint64_t total = 0;
  for (const json& c : rep.at("results").at("counts")) total += c.get<uint64_t>();
  CHECK(total == 300);
}

TEST_CASE("repeat runs are identical apart from timing") {
  const std::string args = "tfim --steps 3 --shots 100 --seed 5";
  const auto a = run_sim(args);
  const auto b = run_sim(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(strip_timing(json::parse(a.out)).dump() == strip_timing(json::parse(b.out)).dump());
}

TEST_CASE("csv output carries the documented header") {
  const std::string path = "/tmp/ruc_cli_report.csv";
  const auto r = run_sim("depolarizing --n-max 2 --shots 50 --csv " + path);
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(path);
  std::remove(path.c_str());
  CHECK(csv.rfind("n,observable,estimate,empirical_variance,predicted_variance,analytic,"
                  "abs_error\n",
                  0) == 0);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run_sim("depolarizing --n-min 0").exit_code == 2);
  CHECK(run_sim("depolarizing --n-max 40").exit_code == 2);
  CHECK(run_sim("depolarizing --p 1.5").exit_code == 2);
  CHECK(run_sim("variance-check --channel /nonexistent.json --observable Z").exit_code == 2);
  const auto r = run_sim("depolarizing --n-max 40");
  CHECK(!r.err.empty());
}

TEST_CASE("capacity failures exit with code 3") {
  const auto r = run_sim("depolarizing --backend dense --n-min 25 --n-max 25 --shots 1");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("dense") != std::string::npos);
}

TEST_CASE("variance-check accepts a channel file") {
  const std::string chan = "/tmp/ruc_cli_chan.json";
  {
    std::ofstream out(chan);
    out << R"({"n": 1, "terms": [{"p": 0.5, "op": "I"}, {"p": 0.5, "op": "X"}]})";
  }
  const auto r =
      run_sim("variance-check --channel " + chan + " --observable Z --shots 50 --runs 20");
  std::remove(chan.c_str());
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("results").at("means").size() == 20);
  CHECK(rep.at("oracle").at("predicted_variance_hybrid").get<double>() ==
        doctest::Approx(1.0 / 50).epsilon(1e-15));
}

TEST_CASE("thread count does not change results") {
  const std::string args = "ancilla-compare --n 1..2 --shots 300 --seed 3";
  const auto a = run_sim(args + " --threads 1");
  const auto b = run_sim(args + " --threads 4");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  json ja = strip_timing(json::parse(a.out));
  json jb = strip_timing(json::parse(b.out));
  ja.at("config").erase("threads");
  jb.at("config").erase("threads");
  CHECK(ja.dump() == jb.dump());
}
