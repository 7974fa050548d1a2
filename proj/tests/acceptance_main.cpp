// Release gate: ten end-to-end checks, one PASS/FAIL line each, exit 0 only
// if every check passes. Tolerances are pinned as constants next to each
// check.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ruc/analytic.hpp"
#include "ruc/ancilla.hpp"
#include "ruc/channel.hpp"
#include "ruc/density.hpp"
#include "ruc/errors.hpp"
#include "ruc/estimator.hpp"
#include "ruc/experiments.hpp"
#include "ruc/tfim.hpp"
#include "support/test_support.hpp"

using namespace ruc;
using nlohmann::json;
namespace ts = test_support;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("%s: %2d - %s%s%s%s\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
              detail.empty() ? "" : " (", detail.c_str(), detail.empty() ? "" : ")");
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RandomUnitaryChannel coin_ix() {
  return RandomUnitaryChannel::explicit_channel(
      {0.5, 0.5}, {Unitary{PauliString::from_text("I")}, Unitary{PauliString::from_text("X")}});
}

// --- 1: depolarized <Z_i> closed form from two independent routes ---------

void check_closed_form() {
  constexpr double kTol = 1e-10;
  constexpr double kMaxSeconds = 1.0;
  const auto t0 = std::chrono::steady_clock::now();

  double max_d = 0.0;
  for (uint32_t n = 1; n <= 4; ++n) {
    for (const double p : {0.0, 0.1, 0.25, 0.5, 0.74}) {
      const double want = 1.0 - depolarizing_lambda(n, p);
      const auto chan = RandomUnitaryChannel::depolarizing(n, p);
      const auto rho = apply_channel_exact(DensityMatrix::zero_state(n), chan);
      const auto terms = chan.enumerate_explicit();
      for (uint32_t i = 0; i < n; ++i) {
        const PauliString obs = PauliString::single(n, i, Pauli::Z);
        max_d = std::max(max_d, std::abs(rho.expectation(Observable(obs)) - want));
        // Full enumeration: true weights, one exact subcircuit per term.
        double lifted = 0.0;
        for (size_t t = 0; t < terms.ops.size(); ++t) {
          QuantumState st = prepare_zero(n, Backend::Dense);
          apply_unitary(st, terms.ops[t]);
          lifted += terms.probs[t] * expectation(st, obs);
        }
        max_d = std::max(max_d, std::abs(lifted - want));
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, max_d < kTol && dt < kMaxSeconds,
         "depolarized single-site values match the closed form by oracle and full enumeration",
         "max |d| " + fmt(max_d) + ", " + fmt(dt) + " s");
}

// --- 2: entangled-pair correlation, oracle and shot statistics ------------

void check_pair_correlation() {
  constexpr double kTol = 1e-10;
  constexpr uint64_t kShots = 1000;
  constexpr int kRuns = 100, kMinHits = 95;
  constexpr double kMaxSeconds = 60.0;
  const auto t0 = std::chrono::steady_clock::now();

  const auto chan = RandomUnitaryChannel::depolarizing(2, 0.5);
  const double want = (1.0 - depolarizing_lambda(2, 0.5)) / std::numbers::sqrt2;

  QuantumState bell = prepare_bell_phase_pairs(2, Backend::Dense);
  Eigen::VectorXcd v(4);
  {
    const auto amps = std::get<DenseState>(bell).amplitudes();
    for (int i = 0; i < 4; ++i) v[i] = amps[static_cast<size_t>(i)];
  }
  const auto rho = apply_channel_exact(DensityMatrix::pure(2, v), chan);
  const PauliString xx = PauliString::from_text("XX");
  const double oracle_d = std::abs(rho.expectation(Observable(xx)) - want);

  const double bound = 4.0 * std::sqrt((1.0 - want * want) / static_cast<double>(kShots));
  const auto prep = Preparation::bell_phase_pairs(2, Backend::Dense);
  EstimateOptions opts;
  opts.auto_variance = false;
  int hits = 0;
  for (int r = 0; r < kRuns; ++r) {
    const double e =
        estimate(chan, prep, xx, kShots, 9000 + static_cast<uint64_t>(r), "gate2", opts).mean;
    if (std::abs(e - want) < bound) ++hits;
  }
  const double dt = seconds_since(t0);
  report(2, oracle_d < kTol && hits >= kMinHits && dt < kMaxSeconds,
         "pair correlation matches the oracle and shot runs stay inside 4 sigma",
         "oracle |d| " + fmt(oracle_d) + ", hits " + std::to_string(hits) + "/100, " + fmt(dt) +
             " s");
}

// --- 3: wide sweep accuracy and per-shot cost growth ----------------------

void check_sweep_scaling() {
  constexpr uint64_t kShots = 1000;
  constexpr double kMaxSeconds = 60.0;
  constexpr double kMseFactor = 9.0;  // 3 sigma on the mean
  constexpr int kMinPointsOk = 26;    // 95% of 27
  constexpr double kMaxBlockRatio = 3.0;

  const auto t0 = std::chrono::steady_clock::now();
  DepolarizingSweepConfig cfg;
  cfg.shots = kShots;
  const json rep = run_depolarizing_sweep(cfg);
  const double dt = seconds_since(t0);

  int points_ok = 0;
  for (size_t i = 0; i < rep.at("results").size(); ++i) {
    const double z = rep.at("oracle")[i].at("expectation").get<double>();
    const double bound = kMseFactor * (1.0 - z * z) / static_cast<double>(kShots);
    if (rep.at("results")[i].at("mse").get<double>() <= bound) ++points_ok;
  }

  // Cost growth: block sums of per-point times on a heavier sweep. A linear
  // cost gives T(15..27)/T(1..13) <= 3; a quadratic one gives ~3.56.
  DepolarizingSweepConfig heavy;
  heavy.shots = 200000;
  const json hrep = run_depolarizing_sweep(heavy);
  double t_lo = 0.0, t_hi = 0.0;
  for (const json& point : hrep.at("timing").at("per_point")) {
    const uint32_t n = point.at("n").get<uint32_t>();
    if (n <= 13) t_lo += point.at("seconds").get<double>();
    if (n >= 15) t_hi += point.at("seconds").get<double>();
  }
  const double ratio = t_hi / t_lo;

  report(3, dt < kMaxSeconds && points_ok >= kMinPointsOk && ratio <= kMaxBlockRatio,
         "wide sweep meets the statistical error bound and per-shot cost grows at most linearly",
         std::to_string(points_ok) + "/27 points, " + fmt(dt) + " s, block ratio " + fmt(ratio));
}

// --- 4: variance formulas agree and match the observed spread -------------

void check_variance_formulas() {
  constexpr double kRouteTol = 1e-10;
  constexpr int kChannels = 50;
  constexpr uint64_t kShots = 100, kRuns = 400;
  constexpr double kRelTol = 0.25;

  Rng rng(104);
  double max_route_d = 0.0;
  for (int c = 0; c < kChannels; ++c) {
    const uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(3));
    const auto chan = ts::random_explicit_channel(n, 1 + rng.next_below(7), rng);
    const auto prep = Preparation::from_circuit(ts::random_circuit(n, 4, rng), Backend::Dense);
    const Observable o(ts::random_pauli(n, rng, /*allow_identity=*/false), 1.0);
    const double hybrid = predicted_variance_hybrid(chan, prep, o, kShots);
    const double stine = predicted_variance_stinespring(chan, prep, o, kShots);
    max_route_d = std::max(max_route_d, std::abs(hybrid - stine));
  }

  VarianceCheckConfig cfg;
  cfg.observable = "Z";
  cfg.shots = kShots;
  cfg.runs = kRuns;
  const json rep = run_variance_check_on(coin_ix(), cfg);
  const double predicted = rep.at("oracle").at("predicted_variance_hybrid").get<double>();
  const double empirical = rep.at("results").at("empirical_variance").get<double>();
  const double rel = std::abs(empirical - predicted) / predicted;
  const bool exact_value = predicted == 1.0 / static_cast<double>(kShots);

  report(4, max_route_d < kRouteTol && rel < kRelTol && exact_value,
         "variance routes agree and the observed spread matches the prediction",
         "max route |d| " + fmt(max_route_d) + ", rel err " + fmt(rel));
}

// --- 5: estimator is unbiased on random channels ---------------------------

void check_unbiasedness() {
  constexpr int kChannels = 10;
  constexpr uint64_t kShots = 100, kRuns = 200;
  constexpr double kMaxSeconds = 120.0;
  const auto t0 = std::chrono::steady_clock::now();

  Rng rng(105);
  int ok = 0;
  for (int c = 0; c < kChannels; ++c) {
    const uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(3));
    const auto chan = ts::random_explicit_channel(n, 1 + rng.next_below(6), rng);
    const PauliString obs = ts::random_pauli(n, rng, /*allow_identity=*/false);
    const auto prep = Preparation::zero(n, Backend::Dense);

    const double truth =
        apply_channel_exact(DensityMatrix::zero_state(n), chan).expectation(Observable(obs));
    const double var = predicted_variance_hybrid(chan, prep, Observable(obs), kShots);

    EstimateOptions opts;
    opts.auto_variance = false;
    double sum = 0.0;
    for (uint64_t r = 0; r < kRuns; ++r) {
      sum += estimate(chan, prep, obs, kShots, 500 + r, "gate5:" + std::to_string(c), opts).mean;
    }
    const double bound = 4.0 * std::sqrt(var / static_cast<double>(kRuns)) + 1e-12;
    if (std::abs(sum / static_cast<double>(kRuns) - truth) < bound) ++ok;
  }
  const double dt = seconds_since(t0);
  report(5, ok == kChannels && dt < kMaxSeconds, "shot estimates are unbiased on random channels",
         std::to_string(ok) + "/" + std::to_string(kChannels) + " channels, " + fmt(dt) + " s");
}

// --- 6: ancilla dilation equals the exact channel, resources as modeled ----

void check_dilation() {
  constexpr double kTol = 1e-9;

  std::vector<RandomUnitaryChannel> channels;
  channels.push_back(RandomUnitaryChannel::identity(1));
  channels.push_back(coin_ix());
  for (const double p : {0.1, 0.5, 0.74}) {
    channels.push_back(RandomUnitaryChannel::depolarizing(1, p));
    channels.push_back(RandomUnitaryChannel::depolarizing(2, p));
  }
  channels.push_back(RandomUnitaryChannel::depolarizing(3, 0.5));  // m = 64
  channels.push_back(RandomUnitaryChannel::compose(RandomUnitaryChannel::depolarizing(1, 0.3),
                                                   RandomUnitaryChannel::depolarizing(1, 0.5)));
  Rng rng(106);
  for (int c = 0; c < 8; ++c) {
    const uint32_t n = 1 + static_cast<uint32_t>(rng.next_below(3));
    channels.push_back(ts::random_explicit_channel(n, 1 + rng.next_below(8), rng));
  }

  double max_d = 0.0;
  Rng prep_rng(107);
  for (const auto& chan : channels) {
    const uint32_t n = chan.num_qubits();
    const CircuitSeq prep = ts::random_circuit(n, 3, prep_rng);
    Observable o(ts::random_pauli(n, prep_rng, /*allow_identity=*/false), 1.0);
    o.add(-0.25, ts::random_pauli(n, prep_rng));

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1 << n);
    v[0] = 1.0;
    v = circuit_matrix(prep) * v;
    const double want = apply_channel_exact(DensityMatrix::pure(n, v), chan).expectation(o);
    const double got = run_dilated_expectation(build_dilated(chan), prep, o);
    max_d = std::max(max_d, std::abs(got - want));
  }

  bool resources_ok = true;
  for (const uint32_t n : {1u, 2u, 3u, 5u}) {
    for (const uint64_t m : {uint64_t{1}, uint64_t{2}, uint64_t{4}, uint64_t{13}, uint64_t{64}}) {
      const auto r = resource_estimate(n, m);
      uint32_t log2m = 0;
      while ((uint64_t{1} << log2m) < m) ++log2m;
      resources_ok = resources_ok && r.qubits == n + log2m && r.depth_lower_bound == m &&
                     r.circuits == 1 && r.controls_per_op == log2m;
    }
  }

  report(6, max_d < kTol && resources_ok,
         "ancilla dilation reproduces the exact channel and the resource model",
         "max |d| " + fmt(max_d) + " over " + std::to_string(channels.size()) + " channels");
}

// --- 7: bitstring-weight histogram against the mixture law -----------------

void check_weight_histogram() {
  constexpr double kTvTol = 0.05;
  constexpr double kOracleTol = 1e-10;

  HammingConfig cfg;  // n=27, p=0.5, p_flip=0.047, shots=10^4
  const json rep = run_hamming(cfg);
  const double tv = rep.at("results").at("tv_vs_oracle").get<double>();

  // Validate the closed-form law itself against a brute-force density
  // calculation at n=2.
  double max_d = 0.0;
  for (const double p : {0.1, 0.5, 0.9}) {
    for (const double p_flip : {0.0, 0.047, 0.3}) {
      const auto rho = apply_channel_exact(DensityMatrix::zero_state(2),
                                           RandomUnitaryChannel::depolarizing(2, p));
      const auto diag = rho.diagonal();
      std::vector<double> brute(3, 0.0);
      for (int b = 0; b < 4; ++b) {
        for (int r = 0; r < 4; ++r) {
          const int flips = std::popcount(static_cast<unsigned>(b ^ r));
          brute[std::popcount(static_cast<unsigned>(r))] +=
              diag[static_cast<size_t>(b)] * std::pow(p_flip, flips) *
              std::pow(1 - p_flip, 2 - flips);
        }
      }
      const auto closed = hamming_distribution(2, p, p_flip);
      for (int w = 0; w <= 2; ++w) {
        max_d = std::max(max_d, std::abs(closed[static_cast<size_t>(w)] -
                                         brute[static_cast<size_t>(w)]));
      }
    }
  }

  report(7, tv < kTvTol && max_d < kOracleTol,
         "sampled weight histogram matches the mixture law, law matches brute force",
         "tv " + fmt(tv) + ", oracle max |d| " + fmt(max_d));
}

// --- 8: two-site evolution, sampled populations, fitted decay time ---------

void check_evolution_decay() {
  constexpr double kSymTol = 1e-10;
  constexpr double kMinFrac = 0.90;
  constexpr double kT1RelTol = 0.10;

  TfimConfig cfg;  // defaults: 25 steps, shots 1000, p 0.05
  const json rep = run_tfim(cfg);

  TfimParams params;
  const PopulationSeries exact = tfim_exact_evolve(params, DensityMatrix::zero_state(2));
  double sym_d = 0.0;
  for (const auto& q : exact.comp_basis) sym_d = std::max(sym_d, std::abs(q[1] - q[2]));

  int pairs = 0, pairs_ok = 0;
  const double shots = static_cast<double>(cfg.shots);
  for (size_t k = 0; k < rep.at("results").at("times").size(); ++k) {
    for (int basis = 0; basis < 2; ++basis) {
      const json& sampled =
          rep.at("results").at(basis == 0 ? "sampled_comp" : "sampled_eigen")[k];
      const json& oracle = rep.at("oracle").at(basis == 0 ? "comp" : "eigen")[k];
      for (size_t j = 0; j < 4; ++j) {
        const double q = oracle[j].get<double>();
        const double f = sampled[j].get<double>();
        const double bar = 4.0 * std::sqrt(q * (1 - q) / shots);
        ++pairs;
        if (std::abs(f - q) <= bar + 1e-12) ++pairs_ok;
      }
    }
  }

  const size_t headline = rep.at("results").at("headline_eigenstate").get<size_t>();
  const double t1 = rep.at("results").at("fits")[headline].at("t1").get<double>();
  const double predicted = rep.at("oracle").at("predicted_t1").get<double>();
  const double t1_rel = std::abs(t1 - predicted) / predicted;

  const double frac = static_cast<double>(pairs_ok) / static_cast<double>(pairs);
  report(8, sym_d < kSymTol && frac >= kMinFrac && t1_rel < kT1RelTol,
         "exact evolution is swap symmetric, samples track it, fitted decay time is right",
         "sym |d| " + fmt(sym_d) + ", " + std::to_string(pairs_ok) + "/" +
             std::to_string(pairs) + " points, T1 rel err " + fmt(t1_rel));
}

// --- 9: backend cross-validation -------------------------------------------

void check_backends() {
  constexpr double kDenseTol = 1e-9;
  constexpr double kFactoredTol = 1e-10;

  Rng rng(109);
  double stab_d = 0.0;
  for (int rep = 0; rep < 60; ++rep) {
    const uint32_t n = 2 + static_cast<uint32_t>(rng.next_below(9));
    const CircuitSeq c = ts::random_clifford_circuit(n, 30, rng);
    QuantumState sv = prepare_zero(n, Backend::Stabilizer);
    QuantumState dv = prepare_zero(n, Backend::Dense);
    apply_circuit(sv, c);
    apply_circuit(dv, c);
    for (int o = 0; o < 6; ++o) {
      const PauliString p = ts::random_pauli(n, rng, /*allow_identity=*/false);
      stab_d = std::max(stab_d, std::abs(expectation(sv, p) - expectation(dv, p)));
    }
  }

  double fact_d = 0.0;
  for (int rep = 0; rep < 40; ++rep) {
    const uint32_t n = 3 + static_cast<uint32_t>(rng.next_below(6));
    // Per-qubit random single-qubit work plus a few in-capacity merges.
    CircuitSeq c(n);
    for (uint32_t q = 0; q < n; ++q) {
      const CircuitSeq single = ts::random_circuit(1, 3, rng);
      for (Gate g : single.gates) {
        g.targets[0] = q;
        c.append(g);
      }
    }
    for (int m = 0; m < 3; ++m) {
      const uint32_t a = static_cast<uint32_t>(rng.next_below(n));
      const uint32_t b = static_cast<uint32_t>(rng.next_below(n));
      if (a != b) c.append(Gate::cx(a, b));
    }
    QuantumState fv = prepare_zero(n, Backend::Factored);
    QuantumState dv = prepare_zero(n, Backend::Dense);
    apply_circuit(fv, c);
    apply_circuit(dv, c);
    for (int o = 0; o < 6; ++o) {
      const PauliString p = ts::random_pauli(n, rng, /*allow_identity=*/false);
      fact_d = std::max(fact_d, std::abs(expectation(fv, p) - expectation(dv, p)));
    }
  }

  report(9, stab_d < kDenseTol && fact_d < kFactoredTol,
         "stabilizer and factored backends agree with dense simulation",
         "stabilizer |d| " + fmt(stab_d) + ", factored |d| " + fmt(fact_d));
}

// --- 10: bit-identical reports across worker-thread counts -----------------

std::string run_cli(const std::string& bin, const std::string& args) {
  const std::string out_path = "/tmp/ruc_accept_out.json";
  const std::string cmd = "\"" + bin + "\" " + args + " > " + out_path + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {};
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return buf.str();
}

// Report with the varying parts removed: timing subtree and thread count.
std::string stable_dump(const std::string& text) {
  if (text.empty()) return {};
  json rep = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (rep.is_discarded()) return {};
  rep.erase("timing");
  if (rep.contains("config")) rep.at("config").erase("threads");
  return rep.dump();
}

void check_determinism() {
  const char* bin = std::getenv("SIM_BIN");
  if (bin == nullptr) {
    report(10, false, "reports are bit-identical across thread counts", "SIM_BIN not set");
    return;
  }

  const std::string chan_path = "/tmp/ruc_accept_chan.json";
  {
    std::ofstream out(chan_path);
    out << R"({"n": 1, "terms": [{"p": 0.5, "op": "I"}, {"p": 0.5, "op": "X"}]})";
  }
  const std::vector<std::string> runs{
      "depolarizing --n-min 1 --n-max 6 --shots 400 --p-flip 0.02 --seed 11",
      "depolarizing --n-min 2 --n-max 4 --state bell-pairs --backend dense --shots 200 --seed 3",
      "hamming --n 12 --shots 2000 --seed 7",
      "tfim --steps 6 --shots 300 --seed 5",
      "ancilla-compare --n 1..3 --shots 300 --seed 9",
      "variance-check --channel " + chan_path + " --observable Z --shots 100 --runs 30 --seed 2",
  };

  int ok = 0;
  for (const auto& args : runs) {
    const std::string base = stable_dump(run_cli(bin, args + " --threads 1"));
    if (base.empty()) continue;
    if (stable_dump(run_cli(bin, args + " --threads 4")) == base &&
        stable_dump(run_cli(bin, args + " --threads 16")) == base) {
      ++ok;
    }
  }
  std::remove(chan_path.c_str());
  report(10, ok == static_cast<int>(runs.size()),
         "reports are bit-identical across 1, 4 and 16 worker threads",
         std::to_string(ok) + "/" + std::to_string(runs.size()) + " experiments");
}

}  // namespace

int main() {
  check_closed_form();
  check_pair_correlation();
  check_sweep_scaling();
  check_variance_formulas();
  check_unbiasedness();
  check_dilation();
  check_weight_histogram();
  check_evolution_decay();
  check_backends();
  check_determinism();

  if (g_failures == 0) {
    std::printf("all 10 checks passed\n");
    return 0;
  }
  std::printf("%d check(s) failed\n", g_failures);
  return 1;
}
