#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "ruc/dense_state.hpp"
#include "ruc/factored_state.hpp"
#include "ruc/stabilizer_state.hpp"

namespace ruc {

enum class Backend : uint8_t { Dense, Factored, Stabilizer };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);

using QuantumState = std::variant<DenseState, FactoredState, StabilizerState>;

// |0...0> on the chosen backend. dense_cap bounds dense widths and factored
// register merges.
QuantumState prepare_zero(uint32_t n, Backend b, uint32_t dense_cap = DenseState::kDefaultCap);

// Pairwise (1/sqrt2)(|00> + e^{i pi/4}|11>) states on qubits (2i, 2i+1),
// prepared by gates; requires even n and a Dense or Factored backend.
QuantumState prepare_bell_phase_pairs(uint32_t n, Backend b,
                                      uint32_t dense_cap = DenseState::kDefaultCap);

uint32_t num_qubits(const QuantumState& s);
void apply_gate(QuantumState& s, const Gate& g);
void apply_circuit(QuantumState& s, const CircuitSeq& c);
void apply_pauli(QuantumState& s, const PauliString& p);

double expectation(const QuantumState& s, const PauliString& p);
double expectation(const QuantumState& s, const Observable& o);

// A +-1 observable's outcome law is fixed by its mean: P(+1) = (1+mean)/2.
// Consumes exactly one uniform draw.
int sample_eigenvalue_from_mean(double mean, Rng& rng);

// One Born-rule eigenvalue draw of a non-identity Pauli. Dense/Factored
// leave the state unchanged and always consume one uniform draw; Stabilizer
// performs a collapsing measurement and draws only on random outcomes.
int sample_pauli_eigenvalue(QuantumState& s, const PauliString& p, Rng& rng);

// One computational-basis sample; collapses Stabilizer states.
BitString sample_bitstring(QuantumState& s, Rng& rng);

}  // namespace ruc
