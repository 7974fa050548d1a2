#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "ruc/bits.hpp"
#include "ruc/rng.hpp"
#include "ruc/state.hpp"

namespace ruc {

class RandomUnitaryChannel;

// Every run_* function validates its config, runs the experiment, and
// returns a report with top-level keys {config, results, oracle, timing,
// version, seed}. Reports are bit-reproducible from (config, seed) alone;
// only the "timing" subtree varies between runs.

struct DepolarizingSweepConfig {
  uint32_t n_min = 1;
  uint32_t n_max = 27;
  double p = 0.5;
  uint64_t shots = 1000;
  std::string state = "zero";     // zero | bell-pairs
  std::string backend = "auto";   // auto | stabilizer | dense | factored
  double p_flip = 0.0;
  uint64_t seed = 42;
};
nlohmann::json run_depolarizing_sweep(const DepolarizingSweepConfig& cfg);

struct HammingConfig {
  uint32_t n = 27;
  double p = 0.5;
  uint64_t shots = 10000;
  double p_flip = 0.047;
  uint64_t seed = 42;
};
nlohmann::json run_hamming(const HammingConfig& cfg);

struct TfimConfig {
  double J = 1.0;
  double h = 1.0;
  double dt = 0.25;
  uint32_t steps = 25;
  double p = 0.05;
  uint64_t shots = 1000;
  uint64_t seed = 42;
};
nlohmann::json run_tfim(const TfimConfig& cfg);

struct AncillaCompareConfig {
  uint32_t n_min = 1;
  uint32_t n_max = 3;
  double p = 0.5;
  uint64_t shots = 1000;
  uint64_t seed = 42;
};
nlohmann::json run_ancilla_compare(const AncillaCompareConfig& cfg);

struct VarianceCheckConfig {
  std::string channel_path;
  std::string observable;  // Pauli text form
  uint64_t shots = 1000;
  uint64_t runs = 400;
  uint64_t seed = 42;
};
nlohmann::json run_variance_check(const VarianceCheckConfig& cfg);
// Same, with the channel given directly (tests bypass the file).
nlohmann::json run_variance_check_on(const RandomUnitaryChannel& channel,
                                     const VarianceCheckConfig& cfg);

// Flip each bit independently with probability p_flip (one Bernoulli draw
// per bit, in qubit order).
BitString inject_readout_flips(const BitString& bits, double p_flip, Rng& rng);

// Flat series form of a report, one table per experiment (documented in the
// README).
std::string report_to_csv(const nlohmann::json& report);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ruc
