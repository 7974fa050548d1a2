#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ruc/bits.hpp"
#include "ruc/gates.hpp"
#include "ruc/observable.hpp"
#include "ruc/pauli.hpp"
#include "ruc/rng.hpp"

namespace ruc {

// Product-state backend: a partition of the qubits into registers, each with
// its own statevector. Two-qubit gates across registers merge them (lazily,
// never split); a merge that would exceed the dense cap raises CapacityError.
class FactoredState {
 public:
  struct Register {
    std::vector<uint32_t> qubits;  // ascending global ids; local bit i = qubits[i]
    std::vector<c64> amp;
  };

  explicit FactoredState(uint32_t n, uint32_t merge_cap = 20);

  uint32_t num_qubits() const { return n_; }
  const std::vector<Register>& registers() const { return regs_; }

  void apply_gate(const Gate& g);
  void apply_circuit(const CircuitSeq& c);
  void apply_pauli(const PauliString& p);
  void apply_dense_op(std::span<const uint32_t> qs, std::span<const c64> m);

  double expectation(const PauliString& p) const;
  double expectation(const Observable& o) const;

  BitString sample_bitstring(Rng& rng) const;

  // Full 2^n amplitude vector (n <= 30); test and diagnostic use.
  std::vector<c64> to_dense() const;

 private:
  uint32_t local_pos(const Register& r, uint32_t q) const;
  // Merge the registers holding the given qubits into one; returns its index.
  uint32_t merge_for(std::span<const uint32_t> qs);
  void merge(uint32_t ra, uint32_t rb);

  uint32_t n_ = 0;
  uint32_t merge_cap_ = 20;
  std::vector<Register> regs_;
  std::vector<uint32_t> reg_of_;
};

}  // namespace ruc
