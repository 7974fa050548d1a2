#include "ruc/dense_state.hpp"

#include <string>

namespace ruc {

namespace {

uint32_t checked_cap(uint32_t n, uint32_t cap) {
  const uint32_t limit = std::min(cap, DenseState::kHardCap);
  if (n == 0) throw ArgumentError("state needs at least one qubit");
  if (n > limit) {
    throw CapacityError("dense backend limited to " + std::to_string(limit) + " qubits, got " +
                        std::to_string(n));
  }
  return n;
}

}  // namespace

DenseState::DenseState(uint32_t n, uint32_t cap) : n_(checked_cap(n, cap)) {
  amp_.assign(size_t{1} << n_, c64{0.0, 0.0});
  amp_[0] = 1.0;
}

DenseState DenseState::from_amplitudes(uint32_t n, std::vector<c64> amp, uint32_t cap) {
  DenseState s(n, cap);
  if (amp.size() != (size_t{1} << n)) throw DimensionError("amplitude count must be 2^n");
  s.amp_ = std::move(amp);
  return s;
}

void DenseState::apply_gate(const Gate& g) {
  for (uint32_t i = 0; i < g.arity; ++i) {
    if (g.targets[i] >= n_) throw ArgumentError("gate target out of range");
  }
  if (g.arity == 1) {
    kernels::apply_1q(amp_, g.targets[0], g.matrix_1q());
  } else {
    kernels::apply_2q(amp_, g.targets[0], g.targets[1], g.matrix_2q());
  }
}

void DenseState::apply_circuit(const CircuitSeq& c) {
  if (c.n != n_) throw DimensionError("circuit width differs from state width");
  for (const Gate& g : c.gates) apply_gate(g);
}

void DenseState::apply_pauli(const PauliString& p) {
  uint64_t xm, zm;
  masks_for(p, xm, zm);
  kernels::apply_pauli_masks(amp_, xm, zm);
}

void DenseState::apply_dense_op(std::span<const uint32_t> qs, std::span<const c64> m) {
  for (uint32_t q : qs) {
    if (q >= n_) throw ArgumentError("operator target out of range");
  }
  kernels::apply_kq(amp_, qs, m);
}

double DenseState::expectation(const PauliString& p) const {
  uint64_t xm, zm;
  masks_for(p, xm, zm);
  return kernels::expval_pauli_masks(amp_, xm, zm);
}

double DenseState::expectation(const Observable& o) const {
  double acc = 0.0;
  for (const auto& [coeff, term] : o.terms) acc += coeff * expectation(term);
  return acc;
}

BitString DenseState::sample_bitstring(Rng& rng) const {
  const double u = rng.next_double() * norm_sq();
  double cum = 0.0;
  size_t pick = amp_.size() - 1;
  for (size_t b = 0; b < amp_.size(); ++b) {
    cum += std::norm(amp_[b]);
    if (u < cum) {
      pick = b;
      break;
    }
  }
  BitString bits(n_);
  for (uint32_t q = 0; q < n_; ++q) bits.set(q, (pick >> q) & 1);
  return bits;
}

void DenseState::masks_for(const PauliString& p, uint64_t& xmask, uint64_t& zmask) const {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  xmask = p.x_words()[0];
  zmask = p.z_words()[0];
}

}  // namespace ruc
