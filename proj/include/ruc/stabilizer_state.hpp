#pragma once

#include <cstdint>
#include <vector>

#include "ruc/bits.hpp"
#include "ruc/gates.hpp"
#include "ruc/observable.hpp"
#include "ruc/pauli.hpp"
#include "ruc/rng.hpp"

namespace ruc {

// Stabilizer tableau over n qubits (destabilizer rows 0..n-1, stabilizer
// rows n..2n-1, bit-packed x/z planes plus a sign bit per row). Supports
// H, S, X, Y, Z, CX, Pauli conjugation, and Pauli measurements; other gates
// raise UnsupportedGateError. Width is capped at kMaxQubits.
class StabilizerState {
 public:
  static constexpr uint32_t kMaxQubits = 4096;

  explicit StabilizerState(uint32_t n);

  uint32_t num_qubits() const { return n_; }

  void apply_gate(const Gate& g);
  void apply_circuit(const CircuitSeq& c);
  // Conjugate the state by a Pauli: flips the sign of every anticommuting row.
  void apply_pauli(const PauliString& p);

  // Exact expectation of a Pauli string: 0 if the outcome is random,
  // otherwise the determined eigenvalue +-1.
  double expectation(const PauliString& p) const;
  double expectation(const Observable& o) const;

  // Born-rule measurement with tableau update; returns the eigenvalue +-1.
  // Consumes one uniform draw only when the outcome is random.
  int measure_pauli(const PauliString& p, Rng& rng);

  // Sequential Z_0..Z_{n-1} measurements with collapse.
  BitString sample_bitstring(Rng& rng);

  // Sign of stabilizer row i (+1/-1); diagnostics and tests.
  int stabilizer_sign(uint32_t i) const;

 private:
  size_t row_offset(uint32_t row) const { return size_t{row} * words_; }
  bool row_anticommutes(uint32_t row, const PauliString& p) const;
  // row_h <- row_h * row_q (they must commute; phase stays real).
  void row_mul(uint32_t h, uint32_t q);
  bool bit(const std::vector<uint64_t>& plane, uint32_t row, uint32_t q) const;
  void xor_bit(std::vector<uint64_t>& plane, uint32_t row, uint32_t q, bool v);

  // Deterministic-outcome sign for a Pauli that commutes with every
  // stabilizer: accumulates the matching stabilizer product.
  int determined_sign(const PauliString& p) const;

  uint32_t n_ = 0;
  size_t words_ = 0;
  std::vector<uint64_t> x_, z_;  // 2n rows, row-major words
  std::vector<uint8_t> sign_;
};

}  // namespace ruc
