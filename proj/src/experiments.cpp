#include "ruc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ruc/analytic.hpp"
#include "ruc/ancilla.hpp"
#include "ruc/channel.hpp"
#include "ruc/density.hpp"
#include "ruc/errors.hpp"
#include "ruc/estimator.hpp"
#include "ruc/tfim.hpp"
#include "ruc/version.hpp"

namespace ruc {

namespace {

using nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

json finish_report(const std::string& experiment, json config, json results, json oracle,
                   json timing, uint64_t seed) {
  config["experiment"] = experiment;
  json report;
  report["config"] = std::move(config);
  report["results"] = std::move(results);
  report["oracle"] = std::move(oracle);
  report["timing"] = std::move(timing);
  report["version"] = kVersion;
  report["seed"] = seed;
  return report;
}

void check_prob(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
  }
}

void check_shots(uint64_t shots) {
  if (shots == 0) throw ValidationError("shot count must be positive");
}

// Sample variance of the mean of n +-1 outcomes with the given average.
double pm1_variance_of_mean(double mean, uint64_t n) {
  if (n < 2) return 0.0;
  const double nd = static_cast<double>(n);
  const double sample_var = std::max(0.0, nd * (1.0 - mean * mean) / (nd - 1.0));
  return sample_var / nd;
}

json per_draw_json(const EstimateReport& rep) {
  json out = json::array();
  for (const auto& d : rep.per_draw) {
    out.push_back({{"op", d.op_id}, {"shots", d.shots}, {"mean_outcome", d.mean_outcome}});
  }
  return out;
}

json estimate_json(const EstimateReport& rep, bool with_draws = false) {
  json out{{"estimate", rep.mean},
           {"empirical_variance", rep.empirical_variance},
           {"shots", rep.n_shots}};
  out["predicted_variance"] =
      rep.predicted_variance ? json(*rep.predicted_variance) : json(nullptr);
  if (with_draws) out["per_draw"] = per_draw_json(rep);
  return out;
}

// One depolarizing draw, x component only: basis-state image of |0^n> under
// the sampled Pauli. Mirrors RandomUnitaryChannel::sample_operator.
uint64_t sample_depolarizing_xmask(uint32_t n, double p, Rng& rng) {
  if (rng.next_double() < 1.0 - p) return 0;
  return PauliString::sample_nonidentity_uniform(n, rng).x_words()[0];
}

}  // namespace

BitString inject_readout_flips(const BitString& bits, double p_flip, Rng& rng) {
  check_prob(p_flip, "readout flip probability");
  BitString out = bits;
  for (uint32_t q = 0; q < out.size(); ++q) {
    if (rng.next_bernoulli(p_flip)) out.flip(q);
  }
  return out;
}

nlohmann::json run_depolarizing_sweep(const DepolarizingSweepConfig& cfg) {
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max) {
    throw ValidationError("need 1 <= n-min <= n-max");
  }
  if (cfg.n_max > PauliString::kMaxSampledQubits) {
    throw ValidationError("sweep limited to 31 qubits");
  }
  check_prob(cfg.p, "depolarizing strength");
  check_prob(cfg.p_flip, "readout flip probability");
  check_shots(cfg.shots);
  const bool bell = cfg.state == "bell-pairs";
  if (!bell && cfg.state != "zero") {
    throw ValidationError("state must be zero or bell-pairs");
  }
  if (cfg.backend != "auto" && cfg.backend != "stabilizer" && cfg.backend != "dense" &&
      cfg.backend != "factored") {
    throw ValidationError("backend must be auto, stabilizer, dense or factored");
  }
  if (bell && (cfg.n_min % 2 != 0 || cfg.n_max % 2 != 0)) {
    throw ValidationError("bell-pairs state needs even qubit counts");
  }
  if (bell && cfg.backend == "stabilizer") {
    throw ValidationError("bell-pairs preparation is non-Clifford; use dense or factored");
  }

  const json config{{"n_min", cfg.n_min},   {"n_max", cfg.n_max}, {"p", cfg.p},
                    {"shots", cfg.shots},   {"state", cfg.state}, {"backend", cfg.backend},
                    {"p_flip", cfg.p_flip}, {"seed", cfg.seed}};
  json results = json::array();
  json oracle = json::array();
  json per_point = json::array();
  Stopwatch total;

  const uint32_t stride = bell ? 2 : 1;
  for (uint32_t n = cfg.n_min; n <= cfg.n_max; n += stride) {
    Stopwatch point;
    const double lambda = depolarizing_lambda(n, cfg.p);
    const uint32_t n_obs = bell ? n / 2 : n;
    std::vector<PauliString> observables;
    observables.reserve(n_obs);
    for (uint32_t i = 0; i < n_obs; ++i) {
      if (bell) {
        PauliString xx = PauliString::identity(n);
        xx.set(2 * i, Pauli::X);
        xx.set(2 * i + 1, Pauli::X);
        observables.push_back(std::move(xx));
      } else {
        observables.push_back(PauliString::single(n, i, Pauli::Z));
      }
    }
    const uint32_t obs_weight = bell ? 2 : 1;
    const double attenuation = std::pow(1.0 - 2.0 * cfg.p_flip, obs_weight);
    const double base = bell ? 1.0 / std::numbers::sqrt2 : 1.0;
    const double analytic = (1.0 - lambda) * base;
    const double analytic_flipped = attenuation * analytic;

    json point_obs = json::array();
    std::vector<double> estimates(n_obs, 0.0);

    if (!bell && cfg.backend == "auto") {
      // All observables read off the same draws, like a hardware shot:
      // the sampled Pauli maps |0^n> to a basis state, each Z_i is the
      // corresponding +-1 bit, readout flips act per bit.
      const uint64_t tag_hash = hash_tag("depol:zero:n=" + std::to_string(n));
      std::vector<int64_t> sums(n, 0);
      for (uint64_t shot = 0; shot < cfg.shots; ++shot) {
        Rng draw = substream(cfg.seed, tag_hash, kLaneDraw, shot);
        uint64_t x = sample_depolarizing_xmask(n, cfg.p, draw);
        if (cfg.p_flip > 0.0) {
          Rng out = substream(cfg.seed, tag_hash, kLaneOutcome, shot);
          for (uint32_t q = 0; q < n; ++q) {
            if (out.next_bernoulli(cfg.p_flip)) x ^= uint64_t{1} << q;
          }
        }
        for (uint32_t q = 0; q < n; ++q) sums[q] += (x >> q & 1) ? -1 : 1;
      }
      const double predicted = (1.0 - analytic_flipped * analytic_flipped) /
                               static_cast<double>(cfg.shots);
      for (uint32_t q = 0; q < n; ++q) {
        estimates[q] = static_cast<double>(sums[q]) / static_cast<double>(cfg.shots);
        point_obs.push_back({{"observable", observables[q].text()},
                             {"estimate", estimates[q]},
                             {"empirical_variance", pm1_variance_of_mean(estimates[q], cfg.shots)},
                             {"predicted_variance", predicted},
                             {"shots", cfg.shots}});
      }
    } else {
      const Backend b = cfg.backend == "auto" ? Backend::Factored
                                              : backend_from_name(cfg.backend);
      const RandomUnitaryChannel channel = RandomUnitaryChannel::depolarizing(n, cfg.p);
      const Preparation prep =
          bell ? Preparation::bell_phase_pairs(n, b) : Preparation::zero(n, b);
      EstimateOptions opts;
      opts.p_flip = cfg.p_flip;
      opts.auto_variance = false;
      for (uint32_t i = 0; i < n_obs; ++i) {
        const std::string tag =
            "depol:" + cfg.state + ":n=" + std::to_string(n) + ":obs=" + observables[i].text();
        const EstimateReport rep =
            estimate(channel, prep, observables[i], cfg.shots, cfg.seed, tag, opts);
        estimates[i] = rep.mean;
        json entry = estimate_json(rep);
        entry["observable"] = observables[i].text();
        // Closed form of the per-shot variance for one Pauli term.
        entry["predicted_variance"] = (1.0 - analytic_flipped * analytic_flipped) /
                                      static_cast<double>(cfg.shots);
        point_obs.push_back(std::move(entry));
      }
    }

    const double point_mse =
        mse(estimates, std::vector<double>(estimates.size(), analytic_flipped));
    results.push_back({{"n", n}, {"observables", std::move(point_obs)}, {"mse", point_mse}});
    oracle.push_back({{"n", n},
                      {"lambda", lambda},
                      {"expectation", analytic},
                      {"expectation_with_flips", analytic_flipped}});
    per_point.push_back({{"n", n}, {"seconds", point.seconds()}});
  }

  json timing{{"total_seconds", total.seconds()}, {"per_point", std::move(per_point)}};
  return finish_report("depolarizing-sweep", config, std::move(results), std::move(oracle),
                       std::move(timing), cfg.seed);
}

nlohmann::json run_hamming(const HammingConfig& cfg) {
  if (cfg.n == 0 || cfg.n > PauliString::kMaxSampledQubits) {
    throw ValidationError("qubit count must lie in [1, 31]");
  }
  check_prob(cfg.p, "depolarizing strength");
  check_prob(cfg.p_flip, "readout flip probability");
  check_shots(cfg.shots);

  const json config{{"n", cfg.n},
                    {"p", cfg.p},
                    {"shots", cfg.shots},
                    {"p_flip", cfg.p_flip},
                    {"seed", cfg.seed}};
  Stopwatch total;

  const uint64_t tag_hash = hash_tag("hamming:n=" + std::to_string(cfg.n));
  std::vector<uint64_t> counts(cfg.n + 1, 0);
  for (uint64_t shot = 0; shot < cfg.shots; ++shot) {
    Rng draw = substream(cfg.seed, tag_hash, kLaneDraw, shot);
    uint64_t x = sample_depolarizing_xmask(cfg.n, cfg.p, draw);
    if (cfg.p_flip > 0.0) {
      Rng out = substream(cfg.seed, tag_hash, kLaneOutcome, shot);
      for (uint32_t q = 0; q < cfg.n; ++q) {
        if (out.next_bernoulli(cfg.p_flip)) x ^= uint64_t{1} << q;
      }
    }
    counts[static_cast<size_t>(std::popcount(x))] += 1;
  }

  std::vector<double> freq(cfg.n + 1, 0.0);
  for (size_t w = 0; w < freq.size(); ++w) {
    freq[w] = static_cast<double>(counts[w]) / static_cast<double>(cfg.shots);
  }
  const std::vector<double> ideal = hamming_distribution(cfg.n, cfg.p, 0.0);
  const std::vector<double> with_flips = hamming_distribution(cfg.n, cfg.p, cfg.p_flip);

  json results{{"counts", counts},
               {"frequencies", freq},
               {"tv_vs_oracle", total_variation(freq, with_flips)},
               {"tv_vs_ideal_oracle", total_variation(freq, ideal)}};
  json oracle{{"lambda", depolarizing_lambda(cfg.n, cfg.p)},
              {"ideal", ideal},
              {"with_flips", with_flips}};
  json timing{{"total_seconds", total.seconds()}};
  return finish_report("hamming", config, std::move(results), std::move(oracle),
                       std::move(timing), cfg.seed);
}

nlohmann::json run_tfim(const TfimConfig& cfg) {
  TfimParams params;
  params.J = cfg.J;
  params.h = cfg.h;
  params.dt = cfg.dt;
  params.steps = cfg.steps;
  params.p = cfg.p;
  params.validate();
  check_shots(cfg.shots);

  const json config{{"J", cfg.J},     {"h", cfg.h},         {"dt", cfg.dt}, {"steps", cfg.steps},
                    {"p", cfg.p},     {"shots", cfg.shots}, {"seed", cfg.seed}};
  Stopwatch total;

  const PopulationSeries exact = tfim_exact_evolve(params, DensityMatrix::zero_state(2));

  const Eigen::Matrix4cd u = tfim_propagator(cfg.J, cfg.h, cfg.dt);
  const Eigen::Matrix4cd vdag = tfim_eigenbasis(cfg.J, cfg.h).vectors.adjoint();
  std::array<c64, 16> u_flat, vdag_flat;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      u_flat[static_cast<size_t>(r * 4 + c)] = u(r, c);
      vdag_flat[static_cast<size_t>(r * 4 + c)] = vdag(r, c);
    }
  }
  const Gate prop = Gate::dense2q(0, 1, u_flat);
  const Gate rotate = Gate::dense2q(0, 1, vdag_flat);

  const auto sample_pass = [&](uint32_t k, bool eigen) {
    const uint64_t tag_hash = hash_tag("tfim:k=" + std::to_string(k) +
                                       (eigen ? ":eigen" : ":comp"));
    std::array<uint64_t, 4> counts{};
    for (uint64_t shot = 0; shot < cfg.shots; ++shot) {
      Rng draw = substream(cfg.seed, tag_hash, kLaneDraw, shot);
      DenseState state(2);
      for (uint32_t step = 0; step < k; ++step) {
        state.apply_gate(prop);
        if (!(draw.next_double() < 1.0 - cfg.p)) {
          state.apply_pauli(PauliString::sample_nonidentity_uniform(2, draw));
        }
      }
      if (eigen) state.apply_gate(rotate);
      Rng out = substream(cfg.seed, tag_hash, kLaneOutcome, shot);
      counts[state.sample_bitstring(out).to_index()] += 1;
    }
    std::array<double, 4> f{};
    for (size_t i = 0; i < 4; ++i) {
      f[i] = static_cast<double>(counts[i]) / static_cast<double>(cfg.shots);
    }
    return f;
  };

  json sampled_comp = json::array();
  json sampled_eigen = json::array();
  std::vector<std::array<double, 4>> eigen_freq;
  for (uint32_t k = 0; k <= cfg.steps; ++k) {
    sampled_comp.push_back(sample_pass(k, false));
    eigen_freq.push_back(sample_pass(k, true));
    sampled_eigen.push_back(eigen_freq.back());
  }

  // Every eigenbasis population relaxes to 1/4 with the same rate; fit the
  // one that starts farthest from the asymptote.
  size_t headline = 0;
  for (size_t j = 1; j < 4; ++j) {
    if (std::abs(exact.eigen_basis[0][j] - 0.25) > std::abs(exact.eigen_basis[0][headline] - 0.25))
      headline = j;
  }

  const auto fit_series = [&](const std::vector<std::array<double, 4>>& series, size_t j) {
    std::vector<double> pops(series.size());
    for (size_t k = 0; k < series.size(); ++k) pops[k] = series[k][j];
    json out;
    try {
      const DecayFit fit = fit_decay_time(exact.times, pops);
      out = {{"t1", fit.t1},
             {"t1_stderr", fit.t1_stderr},
             {"amplitude", fit.amplitude},
             {"iterations", fit.iterations}};
    } catch (const Error& e) {
      out = {{"error", e.what()}};
    }
    return out;
  };

  json fits = json::array();
  json oracle_fits = json::array();
  for (size_t j = 0; j < 4; ++j) {
    fits.push_back(fit_series(eigen_freq, j));
    oracle_fits.push_back(fit_series(exact.eigen_basis, j));
  }

  json predicted_t1;
  try {
    predicted_t1 = predicted_decay_time(cfg.dt, cfg.p);
  } catch (const DomainError&) {
    predicted_t1 = nullptr;  // no decay at p = 0 (or full mixing)
  }

  json results{{"times", exact.times},
               {"sampled_comp", std::move(sampled_comp)},
               {"sampled_eigen", std::move(sampled_eigen)},
               {"fits", std::move(fits)},
               {"headline_eigenstate", headline}};
  json oracle{{"times", exact.times},
              {"comp", exact.comp_basis},
              {"eigen", exact.eigen_basis},
              {"fits", std::move(oracle_fits)},
              {"predicted_t1", predicted_t1}};
  json timing{{"total_seconds", total.seconds()}};
  return finish_report("tfim", config, std::move(results), std::move(oracle), std::move(timing),
                       cfg.seed);
}

nlohmann::json run_ancilla_compare(const AncillaCompareConfig& cfg) {
  if (cfg.n_min == 0 || cfg.n_min > cfg.n_max || cfg.n_max > 3) {
    throw ValidationError("ancilla comparison needs 1 <= n-min <= n-max <= 3");
  }
  check_prob(cfg.p, "depolarizing strength");
  check_shots(cfg.shots);

  const json config{{"n_min", cfg.n_min},
                    {"n_max", cfg.n_max},
                    {"p", cfg.p},
                    {"shots", cfg.shots},
                    {"seed", cfg.seed}};
  json results = json::array();
  json oracle = json::array();
  json per_point = json::array();
  Stopwatch total;

  for (uint32_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    Stopwatch point;
    const uint64_t m = uint64_t{1} << (2 * n);
    const RandomUnitaryChannel channel = RandomUnitaryChannel::depolarizing(n, cfg.p);
    const PauliString obs = PauliString::single(n, 0, Pauli::Z);

    const DilatedCircuit dilated = build_dilated(channel);
    const double dilated_value =
        run_dilated_expectation(dilated, CircuitSeq(n), Observable(obs));

    const EstimateReport hybrid =
        estimate(channel, Preparation::zero(n, Backend::Dense), obs, cfg.shots, cfg.seed,
                 "ancilla-compare:n=" + std::to_string(n));

    const ResourceEstimate res = resource_estimate(n, m);
    const double analytic = 1.0 - depolarizing_lambda(n, cfg.p);

    results.push_back(
        {{"n", n},
         {"terms", m},
         {"dilated", dilated_value},
         {"hybrid", estimate_json(hybrid)},
         {"resources",
          {{"ancilla",
            {{"qubits", res.qubits},
             {"depth_lower_bound", res.depth_lower_bound},
             {"circuits", res.circuits},
             {"controlled_op_count", res.controlled_op_count},
             {"controls_per_op", res.controls_per_op}}},
           {"hybrid",
            {{"qubits", n}, {"depth", 1}, {"circuits", std::min(m, cfg.shots)}}}}}});
    oracle.push_back(
        {{"n", n}, {"lambda", depolarizing_lambda(n, cfg.p)}, {"expectation", analytic}});
    per_point.push_back({{"n", n}, {"seconds", point.seconds()}});
  }

  json timing{{"total_seconds", total.seconds()}, {"per_point", std::move(per_point)}};
  return finish_report("ancilla-compare", config, std::move(results), std::move(oracle),
                       std::move(timing), cfg.seed);
}

nlohmann::json run_variance_check_on(const RandomUnitaryChannel& channel,
                                     const VarianceCheckConfig& cfg) {
  check_shots(cfg.shots);
  if (cfg.runs < 2) throw ValidationError("need at least 2 runs to measure spread");
  const uint32_t n = channel.num_qubits();
  if (n > DensityMatrix::kMaxQubits) {
    throw ValidationError("variance check needs the exact reference, so at most 6 qubits");
  }
  const PauliString obs = PauliString::from_text(cfg.observable);
  if (obs.num_qubits() != n) {
    throw ValidationError("observable acts on " + std::to_string(obs.num_qubits()) +
                          " qubits, channel on " + std::to_string(n));
  }
  if (obs.is_identity()) throw ValidationError("identity observable has no spread");

  const json config{{"channel", cfg.channel_path},
                    {"observable", cfg.observable},
                    {"shots", cfg.shots},
                    {"runs", cfg.runs},
                    {"seed", cfg.seed}};
  Stopwatch total;

  const Preparation prep = Preparation::zero(n, Backend::Dense);
  EstimateOptions opts;
  opts.auto_variance = false;

  std::vector<double> means(cfg.runs);
  double grand = 0.0;
  for (uint64_t r = 0; r < cfg.runs; ++r) {
    means[r] = estimate(channel, prep, obs, cfg.shots, cfg.seed,
                        "variance-check:run=" + std::to_string(r), opts)
                   .mean;
    grand += means[r];
  }
  grand /= static_cast<double>(cfg.runs);
  double spread = 0.0;
  for (const double m : means) spread += (m - grand) * (m - grand);
  spread /= static_cast<double>(cfg.runs - 1);

  const Observable o(obs);
  const double hybrid = predicted_variance_hybrid(channel, prep, o, cfg.shots);
  const double stinespring = predicted_variance_stinespring(channel, prep, o, cfg.shots);
  const double exact =
      apply_channel_exact(DensityMatrix::zero_state(n), channel).expectation(o);

  json results{{"means", means},
               {"grand_mean", grand},
               {"empirical_variance", spread},
               {"empirical_over_predicted", hybrid > 0.0 ? json(spread / hybrid) : json(nullptr)}};
  json oracle{{"expectation", exact},
              {"predicted_variance_hybrid", hybrid},
              {"predicted_variance_stinespring", stinespring}};
  json timing{{"total_seconds", total.seconds()}};
  return finish_report("variance-check", config, std::move(results), std::move(oracle),
                       std::move(timing), cfg.seed);
}

nlohmann::json run_variance_check(const VarianceCheckConfig& cfg) {
  if (cfg.channel_path.empty()) throw ValidationError("a channel spec file is required");
  return run_variance_check_on(parse_channel_spec_file(cfg.channel_path), cfg);
}

namespace {

void csv_row(std::ostringstream& out, std::initializer_list<json> cells) {
  bool first = true;
  for (const json& c : cells) {
    if (!first) out << ',';
    first = false;
    if (c.is_string()) {
      out << c.get<std::string>();
    } else {
      out << c.dump();
    }
  }
  out << '\n';
}

}  // namespace

std::string report_to_csv(const nlohmann::json& report) {
  const std::string experiment = report.at("config").at("experiment").get<std::string>();
  std::ostringstream out;
  out.precision(17);

  if (experiment == "depolarizing-sweep") {
    out << "n,observable,estimate,empirical_variance,predicted_variance,analytic,abs_error\n";
    for (size_t i = 0; i < report.at("results").size(); ++i) {
      const json& point = report.at("results")[i];
      const double analytic = report.at("oracle")[i].at("expectation_with_flips").get<double>();
      for (const json& obs : point.at("observables")) {
        const double est = obs.at("estimate").get<double>();
        csv_row(out, {point.at("n"), obs.at("observable"), est, obs.at("empirical_variance"),
                      obs.at("predicted_variance"), analytic, std::abs(est - analytic)});
      }
    }
  } else if (experiment == "hamming") {
    out << "weight,count,frequency,oracle_ideal,oracle_with_flips\n";
    const json& res = report.at("results");
    for (size_t w = 0; w < res.at("counts").size(); ++w) {
      csv_row(out, {w, res.at("counts")[w], res.at("frequencies")[w],
                    report.at("oracle").at("ideal")[w], report.at("oracle").at("with_flips")[w]});
    }
  } else if (experiment == "tfim") {
    out << "k,t,basis,state,sampled,oracle\n";
    const json& res = report.at("results");
    const json& orc = report.at("oracle");
    for (size_t k = 0; k < res.at("times").size(); ++k) {
      for (size_t j = 0; j < 4; ++j) {
        csv_row(out, {k, res.at("times")[k], "comp", j, res.at("sampled_comp")[k][j],
                      orc.at("comp")[k][j]});
        csv_row(out, {k, res.at("times")[k], "eigen", j, res.at("sampled_eigen")[k][j],
                      orc.at("eigen")[k][j]});
      }
    }
  } else if (experiment == "ancilla-compare") {
    out << "n,terms,analytic,dilated,hybrid_estimate,ancilla_qubits,hybrid_qubits,"
           "multiplexed_segments,hybrid_circuits\n";
    for (size_t i = 0; i < report.at("results").size(); ++i) {
      const json& row = report.at("results")[i];
      const json& res = row.at("resources");
      csv_row(out, {row.at("n"), row.at("terms"), report.at("oracle")[i].at("expectation"),
                    row.at("dilated"), row.at("hybrid").at("estimate"),
                    res.at("ancilla").at("qubits"), res.at("hybrid").at("qubits"),
                    res.at("ancilla").at("depth_lower_bound"),
                    res.at("hybrid").at("circuits")});
    }
  } else if (experiment == "variance-check") {
    out << "run,mean\n";
    const json& means = report.at("results").at("means");
    for (size_t r = 0; r < means.size(); ++r) csv_row(out, {r, means[r]});
  } else {
    throw ArgumentError("unknown experiment in report: " + experiment);
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot open output file: " + path);
  out << text;
  if (!out) throw ArgumentError("failed writing output file: " + path);
}

}  // namespace ruc
