#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruc/bits.hpp"
#include "ruc/rng.hpp"

namespace ruc {

// Single-qubit Pauli codes. The numeric values are the base-4 digits of the
// integer encoding used by from_index / sample_nonidentity_uniform.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

class PauliString;
struct PhasedPauli;
PhasedPauli pauli_mul(const PauliString& a, const PauliString& b);

// n-qubit Pauli string, phase-free, stored as packed x/z bit planes:
// qubit j carries X iff x bit j is set, Z iff z bit j is set, Y iff both.
// The qubit-j factor of the text form is character j ("XIZY": X on qubit 0).
// Supports up to kMaxQubits qubits; uniform sampling of non-identity strings
// additionally requires n <= kMaxSampledQubits so indices fit in 64 bits.
class PauliString {
 public:
  static constexpr uint32_t kMaxQubits = 4096;
  static constexpr uint32_t kMaxSampledQubits = 31;

  PauliString() = default;
  explicit PauliString(uint32_t n);

  static PauliString identity(uint32_t n) { return PauliString(n); }
  static PauliString from_text(std::string_view s);
  // k-th string in the little-endian base-4 encoding: digit j of k is the
  // code of qubit j. k = 0 is the identity.
  static PauliString from_index(uint32_t n, uint64_t k);
  // Single non-identity factor p on qubit q of an n-qubit string.
  static PauliString single(uint32_t n, uint32_t q, Pauli p);
  // Uniform draw from the 4^n - 1 non-identity strings, rejection-free.
  static PauliString sample_nonidentity_uniform(uint32_t n, Rng& rng);

  uint32_t num_qubits() const { return n_; }
  Pauli code(uint32_t q) const;
  void set(uint32_t q, Pauli p);
  bool x_bit(uint32_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(uint32_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }

  bool is_identity() const;
  // Number of non-identity factors.
  uint32_t weight() const;
  bool commutes_with(const PauliString& o) const;

  std::string text() const;

  std::span<const uint64_t> x_words() const { return x_; }
  std::span<const uint64_t> z_words() const { return z_; }

  bool operator==(const PauliString&) const = default;

 private:
  friend struct PhasedPauli;
  friend PhasedPauli pauli_mul(const PauliString& a, const PauliString& b);
  uint32_t n_ = 0;
  std::vector<uint64_t> x_, z_;
};

// Product with exact phase: i^phase_pow * pauli, phase_pow in {0,1,2,3}.
struct PhasedPauli {
  uint8_t phase_pow = 0;
  PauliString pauli;

  std::complex<double> phase() const {
    static constexpr std::complex<double> kI(0.0, 1.0);
    switch (phase_pow & 3) {
      case 0: return {1.0, 0.0};
      case 1: return kI;
      case 2: return {-1.0, 0.0};
      default: return -kI;
    }
  }
};

// a * b as operators (a applied after b). Phase closure is exact: the result
// phase is always an integer power of i.
PhasedPauli pauli_mul(const PauliString& a, const PauliString& b);

// p|bits> = i^phase_pow |out>: X part flips bits, Z part contributes signs,
// Y contributes the leftover i factors.
struct BasisImage {
  BitString bits;
  uint8_t phase_pow = 0;
};
BasisImage apply_to_basis(const PauliString& p, const BitString& bits);

// Sign s in u o u^dag = s * o for Pauli u: +1 if they commute, -1 otherwise.
int conjugate_sign(const PauliString& observable, const PauliString& noise);

}  // namespace ruc
