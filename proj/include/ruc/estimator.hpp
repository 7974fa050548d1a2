#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ruc/channel.hpp"
#include "ruc/observable.hpp"
#include "ruc/rng.hpp"
#include "ruc/state.hpp"

namespace ruc {

// Initial state recipe: |0...0> on the chosen backend, optionally followed
// by a preparation circuit. Stabilizer backends reject non-Clifford prep.
struct Preparation {
  enum class Kind : uint8_t { Zero, BellPhasePairs, Circuit };

  uint32_t n = 1;
  Backend backend = Backend::Dense;
  Kind kind = Kind::Zero;
  CircuitSeq circuit;  // Kind::Circuit only
  uint32_t dense_cap = DenseState::kDefaultCap;

  static Preparation zero(uint32_t n, Backend b);
  static Preparation bell_phase_pairs(uint32_t n, Backend b);
  static Preparation from_circuit(CircuitSeq c, Backend b);

  QuantumState make_state() const;
  // The prep as a plain circuit (empty for Kind::Zero), for oracle use.
  CircuitSeq as_circuit() const;
};

// Apply one channel operator to a state, whatever its form. Dense matrices
// act on qubits 0..k-1 and are rejected by the Stabilizer backend.
void apply_unitary(QuantumState& s, const Unitary& u);

// N categorical draws grouped by operator identity, in first-draw order.
// Pauli draws group by text form; circuit draws by structural identity;
// dense-matrix draws are never grouped.
struct ShotPlan {
  struct Entry {
    Unitary op;
    uint64_t count = 0;
  };
  std::vector<Entry> draws;
  uint64_t total = 0;
};
ShotPlan allocate_shots(const RandomUnitaryChannel& channel, uint64_t n_shots, Rng& rng);

enum class EstimateMode : uint8_t { Shot, ExactSubcircuit };
const char* estimate_mode_name(EstimateMode m);

struct EstimateOptions {
  EstimateMode mode = EstimateMode::Shot;
  // Independent per-qubit readout flip probability. A weight-w Pauli outcome
  // flips sign with probability (1 - (1-2p)^w) / 2.
  double p_flip = 0.0;
  // Fill EstimateReport::predicted_variance when the exact reference is
  // affordable. Repeated-run studies turn this off and compute it once.
  bool auto_variance = true;
};

struct EstimateReport {
  double mean = 0.0;
  uint64_t n_shots = 0;
  // Filled when the channel is enumerable and small enough for the exact
  // reference (n <= 6).
  std::optional<double> predicted_variance;
  double empirical_variance = 0.0;  // sample variance of per-shot outcomes / N

  struct PerDraw {
    std::string op_id;
    uint64_t shots = 0;
    double mean_outcome = 0.0;
  };
  std::vector<PerDraw> per_draw;

  uint64_t seed = 0;
  std::string tag;
  EstimateMode mode = EstimateMode::Shot;
};

// Unbiased estimate of <O> on the channel output. Shot mode draws one
// eigenvalue per shot; exact-subcircuit mode weights each distinct
// operator's exact expectation by its draw frequency. Deterministic in
// (seed, tag) alone: shot i derives its own substreams, so results are
// identical for any worker count.
EstimateReport estimate(const RandomUnitaryChannel& channel, const Preparation& prep,
                        const PauliString& observable, uint64_t n_shots, uint64_t seed,
                        const std::string& tag, const EstimateOptions& opts = {});

namespace reference {
// Same contract as estimate(), as one literal shot-at-a-time loop. The
// grouped implementation must match it bit for bit.
EstimateReport estimate_serial(const RandomUnitaryChannel& channel, const Preparation& prep,
                               const PauliString& observable, uint64_t n_shots, uint64_t seed,
                               const std::string& tag, const EstimateOptions& opts = {});
}  // namespace reference

// Variance of the per-shot-sampling estimator, (1/N)(sum_i p_i <O^2>_i -
// <O>^2), from per-term pure conjugations.
double predicted_variance_hybrid(const RandomUnitaryChannel& channel, const Preparation& prep,
                                 const Observable& o, uint64_t n_shots,
                                 size_t cap = RandomUnitaryChannel::kDefaultEnumCap);
// The same quantity via the mixed output state, (1/N)(<O^2> - <O>^2).
double predicted_variance_stinespring(const RandomUnitaryChannel& channel,
                                      const Preparation& prep, const Observable& o,
                                      uint64_t n_shots,
                                      size_t cap = RandomUnitaryChannel::kDefaultEnumCap);

// Sign-flip probability of a weight-w product outcome under independent
// per-qubit flips.
double outcome_flip_probability(uint32_t weight, double p_flip);

double mse(const std::vector<double>& measured, const std::vector<double>& analytic);

}  // namespace ruc
