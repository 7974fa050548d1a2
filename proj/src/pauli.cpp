#include "ruc/pauli.hpp"

#include <bit>

#include "ruc/errors.hpp"

namespace ruc {

namespace {

void check_qubit_count(uint32_t n) {
  if (n == 0) throw ArgumentError("Pauli string needs at least one qubit");
  if (n > PauliString::kMaxQubits) {
    throw CapacityError("Pauli string width exceeds the supported maximum");
  }
}

uint64_t popcount_and(std::span<const uint64_t> a, std::span<const uint64_t> b) {
  uint64_t c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ArgumentError(std::string("invalid Pauli character '") + c + "'");
  }
}

PauliString::PauliString(uint32_t n) : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {
  check_qubit_count(n);
}

PauliString PauliString::from_text(std::string_view s) {
  PauliString p(static_cast<uint32_t>(s.size()));
  for (uint32_t q = 0; q < s.size(); ++q) p.set(q, pauli_from_char(s[q]));
  return p;
}

PauliString PauliString::from_index(uint32_t n, uint64_t k) {
  check_qubit_count(n);
  if (n > kMaxSampledQubits) {
    throw CapacityError("integer Pauli encoding requires n <= 31");
  }
  PauliString p(n);
  for (uint32_t q = 0; q < n; ++q) {
    p.set(q, static_cast<Pauli>((k >> (2 * q)) & 3));
  }
  return p;
}

PauliString PauliString::single(uint32_t n, uint32_t q, Pauli code) {
  PauliString p(n);
  if (q >= n) throw ArgumentError("qubit index out of range");
  p.set(q, code);
  return p;
}

PauliString PauliString::sample_nonidentity_uniform(uint32_t n, Rng& rng) {
  check_qubit_count(n);
  if (n > kMaxSampledQubits) {
    throw CapacityError("uniform Pauli sampling requires n <= 31");
  }
  const uint64_t space = (uint64_t{1} << (2 * n)) - 1;  // 4^n - 1
  const uint64_t k = 1 + rng.next_below(space);
  return from_index(n, k);
}

Pauli PauliString::code(uint32_t q) const {
  if (q >= n_) throw ArgumentError("qubit index out of range");
  const bool x = x_bit(q), z = z_bit(q);
  if (x) return z ? Pauli::Y : Pauli::X;
  return z ? Pauli::Z : Pauli::I;
}

void PauliString::set(uint32_t q, Pauli p) {
  if (q >= n_) throw ArgumentError("qubit index out of range");
  const uint64_t m = uint64_t{1} << (q & 63);
  const bool x = p == Pauli::X || p == Pauli::Y;
  const bool z = p == Pauli::Z || p == Pauli::Y;
  if (x) {
    x_[q >> 6] |= m;
  } else {
    x_[q >> 6] &= ~m;
  }
  if (z) {
    z_[q >> 6] |= m;
  } else {
    z_[q >> 6] &= ~m;
  }
}

bool PauliString::is_identity() const {
  for (size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] | z_[i]) return false;
  }
  return true;
}

uint32_t PauliString::weight() const {
  uint32_t c = 0;
  for (size_t i = 0; i < x_.size(); ++i) c += static_cast<uint32_t>(std::popcount(x_[i] | z_[i]));
  return c;
}

bool PauliString::commutes_with(const PauliString& o) const {
  if (o.n_ != n_) throw DimensionError("Pauli strings act on different qubit counts");
  // Symplectic inner product: odd <=> anticommute.
  const uint64_t s = popcount_and(x_, o.z_) + popcount_and(z_, o.x_);
  return (s & 1) == 0;
}

std::string PauliString::text() const {
  std::string s(n_, 'I');
  for (uint32_t q = 0; q < n_; ++q) {
    const bool x = x_bit(q), z = z_bit(q);
    s[q] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

PhasedPauli pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli strings act on different qubit counts");
  }
  PhasedPauli r;
  r.pauli = PauliString(a.num_qubits());
  // With the Hermitian factor convention P(x,z) = i^{xz} X^x Z^z, the product
  // phase exponent per qubit is x_a z_a + x_b z_b + 2 z_a x_b - x_r z_r (mod 4).
  int64_t pow = 0;
  auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
  auto* mx = r.pauli.x_.data();
  auto* mz = r.pauli.z_.data();
  for (size_t i = 0; i < ax.size(); ++i) {
    const uint64_t x = ax[i] ^ bx[i];
    const uint64_t z = az[i] ^ bz[i];
    pow += std::popcount(ax[i] & az[i]);
    pow += std::popcount(bx[i] & bz[i]);
    pow += 2 * std::popcount(az[i] & bx[i]);
    pow -= std::popcount(x & z);
    mx[i] = x;
    mz[i] = z;
  }
  r.phase_pow = static_cast<uint8_t>(((pow % 4) + 4) & 3);
  return r;
}

BasisImage apply_to_basis(const PauliString& p, const BitString& bits) {
  if (p.num_qubits() != bits.size()) {
    throw DimensionError("Pauli string and bitstring widths differ");
  }
  BasisImage out;
  out.bits = bits;
  auto bw = out.bits.words();
  auto px = p.x_words(), pz = p.z_words();
  // P(x,z)|b> = i^{x.z} (-1)^{z.b} |b ^ x>.
  int64_t pow = 0;
  for (size_t i = 0; i < px.size(); ++i) {
    pow += std::popcount(px[i] & pz[i]);
    pow += 2 * std::popcount(pz[i] & bw[i]);
    bw[i] ^= px[i];
  }
  out.phase_pow = static_cast<uint8_t>(pow & 3);
  return out;
}

int conjugate_sign(const PauliString& observable, const PauliString& noise) {
  return observable.commutes_with(noise) ? 1 : -1;
}

}  // namespace ruc
