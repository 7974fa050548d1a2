#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ruc/analytic.hpp"
#include "ruc/channel.hpp"
#include "ruc/errors.hpp"
#include "ruc/experiments.hpp"
#include "ruc/version.hpp"
#include "support/test_support.hpp"

using namespace ruc;
using nlohmann::json;

namespace {

json strip_timing(json report) {
  report.erase("timing");
  return report;
}

}  // namespace

TEST_CASE("noise-free sweep reproduces the ideal value exactly") {
  DepolarizingSweepConfig cfg;
  cfg.n_min = 1;
  cfg.n_max = 4;
  cfg.p = 0.0;
  cfg.shots = 50;
  const json rep = run_depolarizing_sweep(cfg);

  for (const char* key : {"config", "results", "oracle", "timing", "version", "seed"}) {
    CHECK(rep.contains(key));
  }
  CHECK(rep.at("version").get<std::string>() == kVersion);
  CHECK(rep.at("seed").get<uint64_t>() == 42);
  CHECK(rep.at("config").at("experiment").get<std::string>() == "depolarizing-sweep");
  CHECK(rep.at("config").at("p").get<double>() == 0.0);
  CHECK(rep.at("config").at("shots").get<uint64_t>() == 50);

  REQUIRE(rep.at("results").size() == 4);
  for (const json& point : rep.at("results")) {
    CHECK(point.at("mse").get<double>() == 0.0);
    for (const json& obs : point.at("observables")) {
      CHECK(obs.at("estimate").get<double>() == 1.0);
    }
  }
  for (const json& row : rep.at("oracle")) {
    CHECK(row.at("lambda").get<double>() == 0.0);
    CHECK(row.at("expectation").get<double>() == 1.0);
  }
}

TEST_CASE("sweep oracle rows carry the closed-form values") {
  DepolarizingSweepConfig cfg;
  cfg.n_min = 1;
  cfg.n_max = 3;
  cfg.shots = 4000;
  const json rep = run_depolarizing_sweep(cfg);
  const std::vector<double> want{1.0 / 3, 7.0 / 15, 31.0 / 63};
  for (size_t i = 0; i < 3; ++i) {
    const json& row = rep.at("oracle")[i];
    CHECK(row.at("expectation").get<double>() == doctest::Approx(want[i]).epsilon(1e-12));
    CHECK(row.at("lambda").get<double>() ==
          doctest::Approx(depolarizing_lambda(static_cast<uint32_t>(i) + 1, 0.5))
              .epsilon(1e-12));
    // Estimates track the oracle within 4 sigma.
    const double sigma = std::sqrt((1 - want[i] * want[i]) / 4000.0);
    for (const json& obs : rep.at("results")[i].at("observables")) {
      CHECK(std::abs(obs.at("estimate").get<double>() - want[i]) < 4 * sigma);
      CHECK(obs.at("predicted_variance").get<double>() ==
            doctest::Approx(sigma * sigma).epsilon(1e-12));
    }
  }
}

TEST_CASE("bell-pair sweep lands on the attenuated pair correlation") {
  DepolarizingSweepConfig cfg;
  cfg.n_min = 2;
  cfg.n_max = 2;
  cfg.state = "bell-pairs";
  cfg.backend = "dense";
  cfg.shots = 20000;
  const json rep = run_depolarizing_sweep(cfg);
  const double want = (7.0 / 15) / std::numbers::sqrt2;
  const double sigma = std::sqrt((1 - want * want) / 20000.0);
  REQUIRE(rep.at("results").size() == 1);
  const json& obs = rep.at("results")[0].at("observables")[0];
  CHECK(obs.at("observable").get<std::string>() == "XX");
  CHECK(std::abs(obs.at("estimate").get<double>() - want) < 4 * sigma);
  CHECK(rep.at("oracle")[0].at("expectation").get<double>() ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("explicit backends agree with the analytic sweep values") {
  const double want = 7.0 / 15;
  const double sigma = std::sqrt((1 - want * want) / 20000.0);
  for (const char* backend : {"stabilizer", "dense", "factored"}) {
    DepolarizingSweepConfig cfg;
    cfg.n_min = 2;
    cfg.n_max = 2;
    cfg.backend = backend;
    cfg.shots = 20000;
    const json rep = run_depolarizing_sweep(cfg);
    for (const json& obs : rep.at("results")[0].at("observables")) {
      CHECK(std::abs(obs.at("estimate").get<double>() - want) < 4 * sigma);
    }
  }
}

TEST_CASE("readout flips attenuate the sweep estimates") {
  DepolarizingSweepConfig cfg;
  cfg.n_min = 1;
  cfg.n_max = 1;
  cfg.p_flip = 0.1;
  cfg.shots = 50000;
  const json rep = run_depolarizing_sweep(cfg);
  const double want = (1 - 2 * 0.1) * (1.0 / 3);
  CHECK(rep.at("oracle")[0].at("expectation_with_flips").get<double>() ==
        doctest::Approx(want).epsilon(1e-12));
  const double sigma = std::sqrt((1 - want * want) / 50000.0);
  CHECK(std::abs(rep.at("results")[0].at("observables")[0].at("estimate").get<double>() - want) <
        4 * sigma);
}

TEST_CASE("sweep validation") {
  DepolarizingSweepConfig cfg;
  cfg.n_min = 0;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.n_min = 3;
  cfg.n_max = 2;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.n_max = 32;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.p = 1.5;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.shots = 0;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.state = "ghz";
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.backend = "gpu";
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.state = "bell-pairs";
  cfg.n_min = 1;
  cfg.n_max = 3;
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
  cfg = {};
  cfg.state = "bell-pairs";
  cfg.n_min = 2;
  cfg.n_max = 2;
  cfg.backend = "stabilizer";
  CHECK_THROWS_AS(run_depolarizing_sweep(cfg), ValidationError);
}

TEST_CASE("hamming counts are complete and match the oracle") {
  HammingConfig cfg;
  cfg.n = 5;
  cfg.p = 0.0;
  cfg.p_flip = 0.0;
  cfg.shots = 300;
  const json clean = run_hamming(cfg);
  CHECK(clean.at("results").at("counts")[0].get<uint64_t>() == 300);
  CHECK(clean.at("results").at("tv_vs_oracle").get<double>() == 0.0);

  cfg = {};
  cfg.n = 6;
  cfg.shots = 10000;
  cfg.p_flip = 0.047;
  const json rep = run_hamming(cfg);
  uint64_t total = 0;
  for (const json& c : rep.at("results").at("counts")) total += c.get<uint64_t>();
  CHECK(total == cfg.shots);
  CHECK(rep.at("results").at("counts").size() == cfg.n + 1);
  CHECK(rep.at("results").at("tv_vs_oracle").get<double>() < 0.05);
  // With flips on, the flip-aware oracle fits at least as well as the ideal.
  CHECK(rep.at("results").at("tv_vs_oracle").get<double>() <=
        rep.at("results").at("tv_vs_ideal_oracle").get<double>());

  const auto want = hamming_distribution(cfg.n, cfg.p, cfg.p_flip);
  for (size_t w = 0; w <= cfg.n; ++w) {
    CHECK(rep.at("oracle").at("with_flips")[w].get<double>() ==
          doctest::Approx(want[w]).epsilon(1e-12));
  }
}

TEST_CASE("fully mixing hamming run matches the fair-coin law") {
  HammingConfig cfg;
  cfg.n = 2;
  cfg.p = 15.0 / 16;  // lambda = 1
  cfg.p_flip = 0.0;
  cfg.shots = 10000;
  const json rep = run_hamming(cfg);
  std::vector<double> freq;
  for (const json& f : rep.at("results").at("frequencies")) freq.push_back(f.get<double>());
  CHECK(total_variation(freq, binomial_pmf(2, 0.5)) < 0.05);
}

TEST_CASE("reports are reproducible apart from timing") {
  DepolarizingSweepConfig sweep;
  sweep.n_max = 3;
  sweep.shots = 200;
  CHECK(strip_timing(run_depolarizing_sweep(sweep)).dump() ==
        strip_timing(run_depolarizing_sweep(sweep)).dump());

  HammingConfig ham;
  ham.n = 4;
  ham.shots = 500;
  CHECK(strip_timing(run_hamming(ham)).dump() == strip_timing(run_hamming(ham)).dump());

  TfimConfig tfim;
  tfim.steps = 3;
  tfim.shots = 100;
  CHECK(strip_timing(run_tfim(tfim)).dump() == strip_timing(run_tfim(tfim)).dump());
}

TEST_CASE("tfim report structure and clean-limit agreement") {
  TfimConfig cfg;
  cfg.steps = 5;
  cfg.shots = 200;
  const json rep = run_tfim(cfg);
  REQUIRE(rep.at("results").at("times").size() == 6);
  REQUIRE(rep.at("results").at("fits").size() == 4);
  REQUIRE(rep.at("oracle").at("fits").size() == 4);
  CHECK(rep.at("oracle").at("predicted_t1").get<double>() ==
        doctest::Approx(4.5613582189).epsilon(1e-9));
  const size_t headline = rep.at("results").at("headline_eigenstate").get<size_t>();
  CHECK(rep.at("oracle").at("fits")[headline].contains("t1"));
  for (const json& row : rep.at("results").at("sampled_eigen")) {
    double sum = 0.0;
    for (const json& f : row) sum += f.get<double>();
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  // p = 0: sampling tracks the unitary oracle within counting noise.
  TfimConfig clean;
  clean.p = 0.0;
  clean.steps = 4;
  clean.shots = 2000;
  const json crep = run_tfim(clean);
  CHECK(crep.at("oracle").at("predicted_t1").is_null());
  for (size_t k = 0; k <= 4; ++k) {
    for (size_t j = 0; j < 4; ++j) {
      const double q = crep.at("oracle").at("comp")[k][j].get<double>();
      const double f = crep.at("results").at("sampled_comp")[k][j].get<double>();
      const double se = std::sqrt(std::max(q * (1 - q) / 2000.0, 1e-9));
      CHECK(std::abs(f - q) < 5 * se);
    }
  }
}

TEST_CASE("tfim validation") {
  TfimConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(run_tfim(cfg), ValidationError);
  cfg = {};
  cfg.p = 1.5;
  CHECK_THROWS_AS(run_tfim(cfg), ValidationError);
  cfg = {};
  cfg.shots = 0;
  CHECK_THROWS_AS(run_tfim(cfg), ValidationError);
}

TEST_CASE("ancilla comparison agrees with the closed form on both routes") {
  AncillaCompareConfig cfg;
  cfg.n_min = 1;
  cfg.n_max = 2;
  cfg.shots = 20000;
  const json rep = run_ancilla_compare(cfg);
  REQUIRE(rep.at("results").size() == 2);
  const std::vector<double> want{1.0 / 3, 7.0 / 15};
  for (size_t i = 0; i < 2; ++i) {
    const json& row = rep.at("results")[i];
    CHECK(row.at("dilated").get<double>() == doctest::Approx(want[i]).epsilon(1e-10));
    const double sigma = std::sqrt((1 - want[i] * want[i]) / 20000.0);
    CHECK(std::abs(row.at("hybrid").at("estimate").get<double>() - want[i]) < 4 * sigma);
    const uint32_t n = static_cast<uint32_t>(i) + 1;
    CHECK(row.at("resources").at("ancilla").at("qubits").get<uint32_t>() == 3 * n);
    CHECK(row.at("resources").at("hybrid").at("qubits").get<uint32_t>() == n);
    CHECK(row.at("terms").get<uint64_t>() == (uint64_t{1} << (2 * n)));
  }

  AncillaCompareConfig bad;
  bad.n_max = 4;
  CHECK_THROWS_AS(run_ancilla_compare(bad), ValidationError);
}

TEST_CASE("variance check ratio sits near one for the symmetric coin") {
  const auto coin = RandomUnitaryChannel::explicit_channel(
      {0.5, 0.5}, {Unitary{PauliString::from_text("I")}, Unitary{PauliString::from_text("X")}});
  VarianceCheckConfig cfg;
  cfg.observable = "Z";
  cfg.shots = 100;
  cfg.runs = 400;
  const json rep = run_variance_check_on(coin, cfg);
  CHECK(rep.at("oracle").at("predicted_variance_hybrid").get<double>() == 1.0 / 100);
  CHECK(rep.at("oracle").at("predicted_variance_stinespring").get<double>() ==
        doctest::Approx(1.0 / 100).epsilon(1e-10));
  CHECK(rep.at("oracle").at("expectation").get<double>() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.at("results").at("means").size() == 400);
  const double ratio = rep.at("results").at("empirical_over_predicted").get<double>();
  CHECK(std::abs(ratio - 1.0) < 0.25);

  VarianceCheckConfig bad = cfg;
  bad.runs = 1;
  CHECK_THROWS_AS(run_variance_check_on(coin, bad), ValidationError);
  bad = cfg;
  bad.observable = "ZZ";
  CHECK_THROWS_AS(run_variance_check_on(coin, bad), ValidationError);
  bad = cfg;
  bad.observable = "I";
  CHECK_THROWS_AS(run_variance_check_on(coin, bad), ValidationError);
}

TEST_CASE("variance check reads a channel spec file") {
  const std::string path = "/tmp/ruc_test_variance_chan.json";
  {
    std::ofstream out(path);
    out << R"({"n": 1, "terms": [
      {"p": 0.5, "op": "I"},
      {"p": 0.5, "op": "X"}
    ]})";
  }
  VarianceCheckConfig cfg;
  cfg.channel_path = path;
  cfg.observable = "Z";
  cfg.shots = 50;
  cfg.runs = 10;
  const json rep = run_variance_check(cfg);
  CHECK(rep.at("config").at("channel").get<std::string>() == path);
  CHECK(rep.at("oracle").at("predicted_variance_hybrid").get<double>() == 1.0 / 50);
  std::remove(path.c_str());

  VarianceCheckConfig missing;
  missing.observable = "Z";
  CHECK_THROWS_AS(run_variance_check(missing), ValidationError);
}

TEST_CASE("readout flip injection") {
  Rng rng(71);
  const BitString bits = BitString::from_text("10110");
  CHECK(inject_readout_flips(bits, 0.0, rng).text() == "10110");
  CHECK(inject_readout_flips(bits, 1.0, rng).text() == "01001");

  const uint64_t trials = 100000;
  uint64_t flips = 0;
  const BitString zero(8);
  for (uint64_t t = 0; t < trials; ++t) {
    flips += inject_readout_flips(zero, 0.047, rng).weight();
  }
  const double rate = static_cast<double>(flips) / static_cast<double>(trials * 8);
  const double se = std::sqrt(0.047 * (1 - 0.047) / static_cast<double>(trials * 8));
  CHECK(std::abs(rate - 0.047) < 4 * se);
  CHECK_THROWS_AS(inject_readout_flips(bits, 1.2, rng), ValidationError);
}

TEST_CASE("csv projections start with the documented headers") {
  DepolarizingSweepConfig sweep;
  sweep.n_max = 2;
  sweep.shots = 20;
  const std::string sweep_csv = report_to_csv(run_depolarizing_sweep(sweep));
  CHECK(sweep_csv.rfind(
            "n,observable,estimate,empirical_variance,predicted_variance,analytic,abs_error\n",
            0) == 0);
  // One row per (n, observable): n=1 has 1, n=2 has 2.
  CHECK(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 4);

  HammingConfig ham;
  ham.n = 3;
  ham.shots = 50;
  CHECK(report_to_csv(run_hamming(ham))
            .rfind("weight,count,frequency,oracle_ideal,oracle_with_flips\n", 0) == 0);

  TfimConfig tfim;
  tfim.steps = 2;
  tfim.shots = 50;
  CHECK(report_to_csv(run_tfim(tfim)).rfind("k,t,basis,state,sampled,oracle\n", 0) == 0);

  AncillaCompareConfig anc;
  anc.n_max = 1;
  anc.shots = 50;
  CHECK(report_to_csv(run_ancilla_compare(anc))
            .rfind("n,terms,analytic,dilated,hybrid_estimate,ancilla_qubits,hybrid_qubits,"
                   "multiplexed_segments,hybrid_circuits\n",
                   0) == 0);

  const auto coin = RandomUnitaryChannel::explicit_channel(
      {0.5, 0.5}, {Unitary{PauliString::from_text("I")}, Unitary{PauliString::from_text("X")}});
  VarianceCheckConfig var;
  var.observable = "Z";
  var.shots = 20;
  var.runs = 3;
  const std::string var_csv = report_to_csv(run_variance_check_on(coin, var));
  CHECK(var_csv.rfind("run,mean\n", 0) == 0);
  CHECK(std::count(var_csv.begin(), var_csv.end(), '\n') == 4);
}

TEST_CASE("text files round trip through write_text_file") {
  const std::string path = "/tmp/ruc_test_write.txt";
  write_text_file(path, "a,b\n1,2\n");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == "a,b\n1,2\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.txt", "y"), ArgumentError);
}
