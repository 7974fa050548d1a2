#include "ruc/state.hpp"

#include <algorithm>
#include <cmath>

namespace ruc {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Dense: return "dense";
    case Backend::Factored: return "factored";
    default: return "stabilizer";
  }
}

Backend backend_from_name(const std::string& name) {
  if (name == "dense") return Backend::Dense;
  if (name == "factored") return Backend::Factored;
  if (name == "stabilizer") return Backend::Stabilizer;
  throw ArgumentError("unknown backend '" + name + "'");
}

QuantumState prepare_zero(uint32_t n, Backend b, uint32_t dense_cap) {
  switch (b) {
    case Backend::Dense: return DenseState(n, dense_cap);
    case Backend::Factored: return FactoredState(n, dense_cap);
    default: return StabilizerState(n);
  }
}

QuantumState prepare_bell_phase_pairs(uint32_t n, Backend b, uint32_t dense_cap) {
  if (b == Backend::Stabilizer) {
    throw UnsupportedGateError("pairwise phase states need a T gate; use Dense or Factored");
  }
  QuantumState s = prepare_zero(n, b, dense_cap);
  apply_circuit(s, bell_phase_pair_circuit(n));
  return s;
}

uint32_t num_qubits(const QuantumState& s) {
  return std::visit([](const auto& st) { return st.num_qubits(); }, s);
}

void apply_gate(QuantumState& s, const Gate& g) {
  std::visit([&](auto& st) { st.apply_gate(g); }, s);
}

void apply_circuit(QuantumState& s, const CircuitSeq& c) {
  std::visit([&](auto& st) { st.apply_circuit(c); }, s);
}

void apply_pauli(QuantumState& s, const PauliString& p) {
  std::visit([&](auto& st) { st.apply_pauli(p); }, s);
}

double expectation(const QuantumState& s, const PauliString& p) {
  return std::visit([&](const auto& st) { return st.expectation(p); }, s);
}

double expectation(const QuantumState& s, const Observable& o) {
  return std::visit([&](const auto& st) { return st.expectation(o); }, s);
}

int sample_eigenvalue_from_mean(double mean, Rng& rng) {
  const double p_plus = std::clamp((1.0 + mean) / 2.0, 0.0, 1.0);
  return rng.next_double() < p_plus ? 1 : -1;
}

int sample_pauli_eigenvalue(QuantumState& s, const PauliString& p, Rng& rng) {
  if (p.is_identity()) {
    throw ArgumentError("identity observable has the deterministic value 1");
  }
  if (auto* st = std::get_if<StabilizerState>(&s)) {
    return st->measure_pauli(p, rng);
  }
  return sample_eigenvalue_from_mean(expectation(s, p), rng);
}

BitString sample_bitstring(QuantumState& s, Rng& rng) {
  return std::visit([&](auto& st) { return st.sample_bitstring(rng); }, s);
}

}  // namespace ruc
