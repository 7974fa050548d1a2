#include "ruc/factored_state.hpp"

#include <algorithm>
#include <string>

#include "ruc/dense_kernels.hpp"
#include "ruc/dense_state.hpp"

namespace ruc {

FactoredState::FactoredState(uint32_t n, uint32_t merge_cap)
    : n_(n), merge_cap_(std::min(merge_cap, DenseState::kHardCap)), reg_of_(n) {
  if (n == 0) throw ArgumentError("state needs at least one qubit");
  regs_.reserve(n);
  for (uint32_t q = 0; q < n; ++q) {
    regs_.push_back({{q}, {c64{1.0, 0.0}, c64{0.0, 0.0}}});
    reg_of_[q] = q;
  }
}

uint32_t FactoredState::local_pos(const Register& r, uint32_t q) const {
  const auto it = std::lower_bound(r.qubits.begin(), r.qubits.end(), q);
  return static_cast<uint32_t>(it - r.qubits.begin());
}

void FactoredState::merge(uint32_t ra, uint32_t rb) {
  if (ra == rb) return;
  Register& a = regs_[ra];
  Register& b = regs_[rb];
  const uint32_t ka = static_cast<uint32_t>(a.qubits.size());
  const uint32_t kb = static_cast<uint32_t>(b.qubits.size());
  if (ka + kb > merge_cap_) {
    throw CapacityError("register merge would exceed " + std::to_string(merge_cap_) + " qubits");
  }

  Register merged;
  merged.qubits.resize(ka + kb);
  std::merge(a.qubits.begin(), a.qubits.end(), b.qubits.begin(), b.qubits.end(),
             merged.qubits.begin());

  // Positions of a's and b's local bits inside the merged index.
  std::vector<uint32_t> pos_a(ka), pos_b(kb);
  for (uint32_t i = 0; i < ka; ++i) pos_a[i] = local_pos(merged, a.qubits[i]);
  for (uint32_t i = 0; i < kb; ++i) pos_b[i] = local_pos(merged, b.qubits[i]);

  merged.amp.assign(size_t{1} << (ka + kb), c64{0.0, 0.0});
  for (size_t ia = 0; ia < a.amp.size(); ++ia) {
    size_t base = 0;
    for (uint32_t i = 0; i < ka; ++i) {
      if ((ia >> i) & 1) base |= size_t{1} << pos_a[i];
    }
    for (size_t ib = 0; ib < b.amp.size(); ++ib) {
      size_t idx = base;
      for (uint32_t i = 0; i < kb; ++i) {
        if ((ib >> i) & 1) idx |= size_t{1} << pos_b[i];
      }
      merged.amp[idx] = a.amp[ia] * b.amp[ib];
    }
  }

  regs_[ra] = std::move(merged);
  regs_.erase(regs_.begin() + rb);
  for (uint32_t q = 0; q < n_; ++q) {
    if (reg_of_[q] == rb) {
      reg_of_[q] = ra;
    } else if (reg_of_[q] > rb) {
      --reg_of_[q];
    }
  }
}

uint32_t FactoredState::merge_for(std::span<const uint32_t> qs) {
  for (uint32_t q : qs) {
    if (q >= n_) throw ArgumentError("qubit index out of range");
  }
  uint32_t target = reg_of_[qs[0]];
  for (size_t i = 1; i < qs.size(); ++i) {
    uint32_t other = reg_of_[qs[i]];
    if (other == target) continue;
    const uint32_t lo = std::min(target, other), hi = std::max(target, other);
    merge(lo, hi);
    target = lo;
  }
  return target;
}

void FactoredState::apply_gate(const Gate& g) {
  if (g.arity == 1) {
    const uint32_t q = g.targets[0];
    if (q >= n_) throw ArgumentError("gate target out of range");
    Register& r = regs_[reg_of_[q]];
    kernels::apply_1q(r.amp, local_pos(r, q), g.matrix_1q());
    return;
  }
  const uint32_t ridx = merge_for(std::span<const uint32_t>(g.targets.data(), 2));
  Register& r = regs_[ridx];
  kernels::apply_2q(r.amp, local_pos(r, g.targets[0]), local_pos(r, g.targets[1]),
                    g.matrix_2q());
}

void FactoredState::apply_circuit(const CircuitSeq& c) {
  if (c.n != n_) throw DimensionError("circuit width differs from state width");
  for (const Gate& g : c.gates) apply_gate(g);
}

void FactoredState::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  // A Pauli string factors exactly over any qubit partition.
  for (Register& r : regs_) {
    uint64_t xm = 0, zm = 0;
    for (uint32_t i = 0; i < r.qubits.size(); ++i) {
      if (p.x_bit(r.qubits[i])) xm |= uint64_t{1} << i;
      if (p.z_bit(r.qubits[i])) zm |= uint64_t{1} << i;
    }
    if (xm | zm) kernels::apply_pauli_masks(r.amp, xm, zm);
  }
}

void FactoredState::apply_dense_op(std::span<const uint32_t> qs, std::span<const c64> m) {
  const uint32_t ridx = merge_for(qs);
  Register& r = regs_[ridx];
  std::vector<uint32_t> local(qs.size());
  for (size_t i = 0; i < qs.size(); ++i) local[i] = local_pos(r, qs[i]);
  kernels::apply_kq(r.amp, local, m);
}

double FactoredState::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  double acc = 1.0;
  for (const Register& r : regs_) {
    uint64_t xm = 0, zm = 0;
    for (uint32_t i = 0; i < r.qubits.size(); ++i) {
      if (p.x_bit(r.qubits[i])) xm |= uint64_t{1} << i;
      if (p.z_bit(r.qubits[i])) zm |= uint64_t{1} << i;
    }
    if (xm | zm) acc *= kernels::expval_pauli_masks(r.amp, xm, zm);
  }
  return acc;
}

double FactoredState::expectation(const Observable& o) const {
  double acc = 0.0;
  for (const auto& [coeff, term] : o.terms) acc += coeff * expectation(term);
  return acc;
}

BitString FactoredState::sample_bitstring(Rng& rng) const {
  BitString bits(n_);
  for (const Register& r : regs_) {
    const double u = rng.next_double() * kernels::norm_sq(r.amp);
    double cum = 0.0;
    size_t pick = r.amp.size() - 1;
    for (size_t b = 0; b < r.amp.size(); ++b) {
      cum += std::norm(r.amp[b]);
      if (u < cum) {
        pick = b;
        break;
      }
    }
    for (uint32_t i = 0; i < r.qubits.size(); ++i) bits.set(r.qubits[i], (pick >> i) & 1);
  }
  return bits;
}

std::vector<c64> FactoredState::to_dense() const {
  if (n_ > 30) throw CapacityError("state too wide to densify");
  std::vector<c64> full(size_t{1} << n_);
  for (size_t b = 0; b < full.size(); ++b) {
    c64 v{1.0, 0.0};
    for (const Register& r : regs_) {
      size_t local = 0;
      for (uint32_t i = 0; i < r.qubits.size(); ++i) {
        if ((b >> r.qubits[i]) & 1) local |= size_t{1} << i;
      }
      v *= r.amp[local];
    }
    full[b] = v;
  }
  return full;
}

}  // namespace ruc
