#include "ruc/stabilizer_state.hpp"

#include <bit>
#include <cassert>
#include <string>

namespace ruc {

namespace {

// Phase exponent (power of i, mod 4) of the product a*b of two Pauli rows
// given their word planes, with the Hermitian factor convention.
int64_t product_phase_pow(const uint64_t* ax, const uint64_t* az, const uint64_t* bx,
                          const uint64_t* bz, size_t words) {
  int64_t pow = 0;
  for (size_t i = 0; i < words; ++i) {
    const uint64_t rx = ax[i] ^ bx[i];
    const uint64_t rz = az[i] ^ bz[i];
    pow += std::popcount(ax[i] & az[i]);
    pow += std::popcount(bx[i] & bz[i]);
    pow += 2 * std::popcount(az[i] & bx[i]);
    pow -= std::popcount(rx & rz);
  }
  return ((pow % 4) + 4) & 3;
}

}  // namespace

StabilizerState::StabilizerState(uint32_t n) : n_(n), words_((n + 63) / 64) {
  if (n == 0) throw ArgumentError("state needs at least one qubit");
  if (n > kMaxQubits) {
    throw CapacityError("stabilizer backend limited to " + std::to_string(kMaxQubits) +
                        " qubits, got " + std::to_string(n));
  }
  x_.assign(size_t{2} * n_ * words_, 0);
  z_.assign(size_t{2} * n_ * words_, 0);
  sign_.assign(size_t{2} * n_, 0);
  for (uint32_t i = 0; i < n_; ++i) {
    xor_bit(x_, i, i, true);        // destabilizer X_i
    xor_bit(z_, n_ + i, i, true);   // stabilizer Z_i
  }
}

bool StabilizerState::bit(const std::vector<uint64_t>& plane, uint32_t row, uint32_t q) const {
  return (plane[row_offset(row) + (q >> 6)] >> (q & 63)) & 1;
}

void StabilizerState::xor_bit(std::vector<uint64_t>& plane, uint32_t row, uint32_t q, bool v) {
  if (v) plane[row_offset(row) + (q >> 6)] ^= uint64_t{1} << (q & 63);
}

void StabilizerState::apply_gate(const Gate& g) {
  if (!g.is_clifford()) {
    throw UnsupportedGateError(std::string("stabilizer backend cannot apply gate ") +
                               gate_kind_name(g.kind));
  }
  for (uint32_t i = 0; i < g.arity; ++i) {
    if (g.targets[i] >= n_) throw ArgumentError("gate target out of range");
  }
  const uint32_t rows = 2 * n_;
  switch (g.kind) {
    case GateKind::H: {
      const uint32_t q = g.targets[0];
      for (uint32_t r = 0; r < rows; ++r) {
        const bool xb = bit(x_, r, q), zb = bit(z_, r, q);
        sign_[r] ^= static_cast<uint8_t>(xb && zb);
        if (xb != zb) {
          xor_bit(x_, r, q, true);
          xor_bit(z_, r, q, true);
        }
      }
      return;
    }
    case GateKind::S: {
      const uint32_t q = g.targets[0];
      for (uint32_t r = 0; r < rows; ++r) {
        const bool xb = bit(x_, r, q), zb = bit(z_, r, q);
        sign_[r] ^= static_cast<uint8_t>(xb && zb);
        xor_bit(z_, r, q, xb);
      }
      return;
    }
    case GateKind::X: {
      const uint32_t q = g.targets[0];
      for (uint32_t r = 0; r < rows; ++r) sign_[r] ^= static_cast<uint8_t>(bit(z_, r, q));
      return;
    }
    case GateKind::Y: {
      const uint32_t q = g.targets[0];
      for (uint32_t r = 0; r < rows; ++r) {
        sign_[r] ^= static_cast<uint8_t>(bit(x_, r, q) != bit(z_, r, q));
      }
      return;
    }
    case GateKind::Z: {
      const uint32_t q = g.targets[0];
      for (uint32_t r = 0; r < rows; ++r) sign_[r] ^= static_cast<uint8_t>(bit(x_, r, q));
      return;
    }
    default: {  // CX
      const uint32_t c = g.targets[0], t = g.targets[1];
      for (uint32_t r = 0; r < rows; ++r) {
        const bool xc = bit(x_, r, c), zc = bit(z_, r, c);
        const bool xt = bit(x_, r, t), zt = bit(z_, r, t);
        sign_[r] ^= static_cast<uint8_t>(xc && zt && (xt == zc));
        xor_bit(x_, r, t, xc);
        xor_bit(z_, r, c, zt);
      }
      return;
    }
  }
}

void StabilizerState::apply_circuit(const CircuitSeq& c) {
  if (c.n != n_) throw DimensionError("circuit width differs from state width");
  for (const Gate& g : c.gates) apply_gate(g);
}

void StabilizerState::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    sign_[r] ^= static_cast<uint8_t>(row_anticommutes(r, p));
  }
}

bool StabilizerState::row_anticommutes(uint32_t row, const PauliString& p) const {
  const uint64_t* rx = x_.data() + row_offset(row);
  const uint64_t* rz = z_.data() + row_offset(row);
  auto px = p.x_words(), pz = p.z_words();
  uint64_t acc = 0;
  for (size_t i = 0; i < words_; ++i) {
    acc += std::popcount(rx[i] & pz[i]) + std::popcount(rz[i] & px[i]);
  }
  return acc & 1;
}

void StabilizerState::row_mul(uint32_t h, uint32_t q) {
  uint64_t* hx = x_.data() + row_offset(h);
  uint64_t* hz = z_.data() + row_offset(h);
  const uint64_t* qx = x_.data() + row_offset(q);
  const uint64_t* qz = z_.data() + row_offset(q);
  const int64_t pow = product_phase_pow(qx, qz, hx, hz, words_);
  assert((pow & 1) == 0);  // commuting Hermitian rows: product phase is +-1
  sign_[h] = static_cast<uint8_t>(sign_[h] ^ sign_[q] ^ (pow == 2 ? 1 : 0));
  for (size_t i = 0; i < words_; ++i) {
    hx[i] ^= qx[i];
    hz[i] ^= qz[i];
  }
}

int StabilizerState::determined_sign(const PauliString& p) const {
  // P commutes with the whole stabilizer group, so P = +-(product of the
  // generators whose paired destabilizer anticommutes with P).
  std::vector<uint64_t> sx(words_, 0), sz(words_, 0);
  int64_t phase = 0;  // power of i, mod 4
  int sign = 0;
  for (uint32_t i = 0; i < n_; ++i) {
    if (!row_anticommutes(i, p)) continue;
    const uint32_t row = n_ + i;
    const uint64_t* gx = x_.data() + row_offset(row);
    const uint64_t* gz = z_.data() + row_offset(row);
    phase = (phase + product_phase_pow(sx.data(), sz.data(), gx, gz, words_)) & 3;
    sign ^= sign_[row];
    for (size_t w = 0; w < words_; ++w) {
      sx[w] ^= gx[w];
      sz[w] ^= gz[w];
    }
  }
  assert((phase & 1) == 0);
#ifndef NDEBUG
  auto px = p.x_words(), pz = p.z_words();
  for (size_t w = 0; w < words_; ++w) assert(sx[w] == px[w] && sz[w] == pz[w]);
#endif
  sign ^= (phase == 2) ? 1 : 0;
  return sign ? -1 : 1;
}

double StabilizerState::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  if (p.is_identity()) return 1.0;
  for (uint32_t i = n_; i < 2 * n_; ++i) {
    if (row_anticommutes(i, p)) return 0.0;
  }
  return static_cast<double>(determined_sign(p));
}

double StabilizerState::expectation(const Observable& o) const {
  double acc = 0.0;
  for (const auto& [coeff, term] : o.terms) acc += coeff * expectation(term);
  return acc;
}

int StabilizerState::measure_pauli(const PauliString& p, Rng& rng) {
  if (p.num_qubits() != n_) throw DimensionError("Pauli width differs from state width");
  if (p.is_identity()) throw ArgumentError("measurement of the identity is deterministic");

  uint32_t pivot = 2 * n_;
  for (uint32_t i = n_; i < 2 * n_; ++i) {
    if (row_anticommutes(i, p)) {
      pivot = i;
      break;
    }
  }
  if (pivot == 2 * n_) return determined_sign(p);

  // Random outcome: fold the pivot row into every other anticommuting row,
  // move it to the paired destabilizer slot, and install +-P as the new
  // stabilizer.
  const uint32_t partner = pivot - n_;
  for (uint32_t r = 0; r < 2 * n_; ++r) {
    if (r == pivot || r == partner) continue;
    if (row_anticommutes(r, p)) row_mul(r, pivot);
  }
  {
    uint64_t* dx = x_.data() + row_offset(partner);
    uint64_t* dz = z_.data() + row_offset(partner);
    const uint64_t* px = x_.data() + row_offset(pivot);
    const uint64_t* pz = z_.data() + row_offset(pivot);
    for (size_t w = 0; w < words_; ++w) {
      dx[w] = px[w];
      dz[w] = pz[w];
    }
    sign_[partner] = sign_[pivot];
  }
  const int outcome = rng.next_double() < 0.5 ? 1 : -1;
  {
    uint64_t* px = x_.data() + row_offset(pivot);
    uint64_t* pz = z_.data() + row_offset(pivot);
    auto nx = p.x_words(), nz = p.z_words();
    for (size_t w = 0; w < words_; ++w) {
      px[w] = nx[w];
      pz[w] = nz[w];
    }
    sign_[pivot] = outcome < 0 ? 1 : 0;
  }
  return outcome;
}

BitString StabilizerState::sample_bitstring(Rng& rng) {
  BitString bits(n_);
  for (uint32_t q = 0; q < n_; ++q) {
    const int v = measure_pauli(PauliString::single(n_, q, Pauli::Z), rng);
    bits.set(q, v < 0);
  }
  return bits;
}

int StabilizerState::stabilizer_sign(uint32_t i) const {
  if (i >= n_) throw ArgumentError("stabilizer row index out of range");
  return sign_[n_ + i] ? -1 : 1;
}

}  // namespace ruc
