#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ruc/errors.hpp"

namespace ruc {

using c64 = std::complex<double>;

enum class GateKind : uint8_t { H, S, T, X, Y, Z, CX, RX, RZ, RZZ, Dense1Q, Dense2Q };

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

// One gate on one or two qubits. Rotation angles follow the
// exp(-i theta G / 2) convention (G = X, Z or Z(x)Z). Dense matrices are
// row-major over local indices; local index bit 0 is targets[0], bit 1 is
// targets[1]. Dense matrices must be unitary within 1e-10.
struct Gate {
  GateKind kind = GateKind::H;
  uint32_t arity = 1;
  std::array<uint32_t, 2> targets{0, 0};
  double theta = 0.0;
  std::vector<c64> matrix;  // 4 entries for Dense1Q, 16 for Dense2Q

  static Gate h(uint32_t q) { return fixed(GateKind::H, q); }
  static Gate s(uint32_t q) { return fixed(GateKind::S, q); }
  static Gate t(uint32_t q) { return fixed(GateKind::T, q); }
  static Gate x(uint32_t q) { return fixed(GateKind::X, q); }
  static Gate y(uint32_t q) { return fixed(GateKind::Y, q); }
  static Gate z(uint32_t q) { return fixed(GateKind::Z, q); }
  static Gate cx(uint32_t control, uint32_t target);
  static Gate rx(uint32_t q, double theta);
  static Gate rz(uint32_t q, double theta);
  static Gate rzz(uint32_t a, uint32_t b, double theta);
  static Gate dense1q(uint32_t q, const std::array<c64, 4>& m);
  static Gate dense2q(uint32_t a, uint32_t b, const std::array<c64, 16>& m);

  bool is_clifford() const;

  // Materialize the local matrix (2x2 or 4x4, row-major as above).
  std::array<c64, 4> matrix_1q() const;
  std::array<c64, 16> matrix_2q() const;

 private:
  static Gate fixed(GateKind k, uint32_t q);
};

// Ordered gate list over n qubits; targets validated on append.
struct CircuitSeq {
  uint32_t n = 0;
  std::vector<Gate> gates;

  CircuitSeq() = default;
  explicit CircuitSeq(uint32_t num_qubits) : n(num_qubits) {}

  CircuitSeq& append(Gate g);
  void append_all(const CircuitSeq& other);
  bool is_clifford() const;
};

// Preparation circuit for pairwise states (1/sqrt2)(|00> + e^{i pi/4}|11>)
// on qubits (2i, 2i+1): H, T on the even qubit, then CX onto the odd one.
CircuitSeq bell_phase_pair_circuit(uint32_t n);

}  // namespace ruc
