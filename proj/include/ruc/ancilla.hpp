#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ruc/channel.hpp"
#include "ruc/dense_state.hpp"
#include "ruc/gates.hpp"
#include "ruc/observable.hpp"

namespace ruc {

// Ancilla-register simulation of an enumerable channel: encode {sqrt(p_i)}
// on ceil(log2 m) ancillas, then apply U_i to the target conditioned on the
// ancillas reading i. Discarding the ancillas leaves sum_i p_i U_i rho U_i^dag.
struct DilatedCircuit {
  uint32_t n_target = 0;
  uint32_t n_ancilla = 0;
  CircuitSeq prep;  // on ancilla-local qubits 0..n_ancilla-1
  std::vector<std::pair<uint64_t, Unitary>> multiplexer;  // (ancilla pattern, op)
};

// Circuit on ceil(log2 m) qubits taking |0..0> to sum_i sqrt(p_i) |i>,
// as a binary tree of uniformly controlled Y rotations, each decomposed
// Gray-code style into single-qubit rotations and CX. Probabilities are
// real nonnegative, so no phase corrections are needed.
CircuitSeq build_state_prep(const std::vector<double>& probs);

DilatedCircuit build_dilated(const RandomUnitaryChannel& channel, size_t max_terms = 64);

// Exact <O (x) I_ancilla> on the dilated pure state, by dense simulation.
// Ancillas sit above the target, so each multiplexer block is one
// contiguous amplitude range.
double run_dilated_expectation(const DilatedCircuit& d, const CircuitSeq& prep_target,
                               const Observable& o, uint32_t dense_cap = DenseState::kDefaultCap);

// Cost model of the ancilla route for an m-term channel on n qubits,
// contrasted in reports with the per-shot route (n qubits, depth-1
// operators, min(m, N) distinct circuits).
struct ResourceEstimate {
  uint32_t qubits = 0;            // n + ceil(log2 m)
  uint64_t depth_lower_bound = 0; // m multiplexed segments
  uint64_t circuits = 1;
  uint64_t controlled_op_count = 0;
  uint32_t controls_per_op = 0;   // ceil(log2 m)
};
ResourceEstimate resource_estimate(uint32_t n, uint64_t m);

}  // namespace ruc
