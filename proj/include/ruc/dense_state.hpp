#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ruc/bits.hpp"
#include "ruc/dense_kernels.hpp"
#include "ruc/gates.hpp"
#include "ruc/observable.hpp"
#include "ruc/pauli.hpp"
#include "ruc/rng.hpp"

namespace ruc {

// Full statevector over n qubits; amplitude index bit j is qubit j.
// Memory is 2^n complex doubles, so construction enforces a qubit cap
// (default 20, hard limit 30).
class DenseState {
 public:
  static constexpr uint32_t kDefaultCap = 20;
  static constexpr uint32_t kHardCap = 30;

  explicit DenseState(uint32_t n, uint32_t cap = kDefaultCap);
  static DenseState from_amplitudes(uint32_t n, std::vector<c64> amp, uint32_t cap = kDefaultCap);

  uint32_t num_qubits() const { return n_; }
  std::span<const c64> amplitudes() const { return amp_; }
  std::span<c64> amplitudes() { return amp_; }

  void apply_gate(const Gate& g);
  void apply_circuit(const CircuitSeq& c);
  void apply_pauli(const PauliString& p);
  // Apply a 2^k x 2^k unitary (row-major, local bit i = qs[i], k <= 3).
  void apply_dense_op(std::span<const uint32_t> qs, std::span<const c64> m);

  double expectation(const PauliString& p) const;
  double expectation(const Observable& o) const;
  double norm_sq() const { return kernels::norm_sq(amp_); }

  BitString sample_bitstring(Rng& rng) const;

 private:
  void masks_for(const PauliString& p, uint64_t& xmask, uint64_t& zmask) const;

  uint32_t n_ = 0;
  std::vector<c64> amp_;
};

}  // namespace ruc
