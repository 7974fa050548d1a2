#include "ruc/gates.hpp"

#include <cmath>
#include <numbers>

namespace ruc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// ||M M^dag - I||_max for a dim x dim row-major matrix.
double unitarity_defect(const std::vector<c64>& m, size_t dim) {
  double worst = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      c64 acc = 0.0;
      for (size_t k = 0; k < dim; ++k) acc += m[i * dim + k] * std::conj(m[j * dim + k]);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

}  // namespace

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::T: return "T";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CX: return "CX";
    case GateKind::RX: return "RX";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::Dense1Q: return "Dense1Q";
    default: return "Dense2Q";
  }
}

GateKind gate_kind_from_name(const std::string& name) {
  static const std::pair<const char*, GateKind> table[] = {
      {"H", GateKind::H},   {"S", GateKind::S},     {"T", GateKind::T},
      {"X", GateKind::X},   {"Y", GateKind::Y},     {"Z", GateKind::Z},
      {"CX", GateKind::CX}, {"RX", GateKind::RX},   {"RZ", GateKind::RZ},
      {"RZZ", GateKind::RZZ}, {"Dense1Q", GateKind::Dense1Q}, {"Dense2Q", GateKind::Dense2Q},
  };
  for (const auto& [n, k] : table) {
    if (name == n) return k;
  }
  throw ArgumentError("unknown gate kind '" + name + "'");
}

Gate Gate::fixed(GateKind k, uint32_t q) {
  Gate g;
  g.kind = k;
  g.arity = 1;
  g.targets = {q, 0};
  return g;
}

Gate Gate::cx(uint32_t control, uint32_t target) {
  if (control == target) throw ArgumentError("CX control and target must differ");
  Gate g;
  g.kind = GateKind::CX;
  g.arity = 2;
  g.targets = {control, target};
  return g;
}

Gate Gate::rx(uint32_t q, double theta) {
  Gate g = fixed(GateKind::RX, q);
  g.theta = theta;
  return g;
}

Gate Gate::rz(uint32_t q, double theta) {
  Gate g = fixed(GateKind::RZ, q);
  g.theta = theta;
  return g;
}

Gate Gate::rzz(uint32_t a, uint32_t b, double theta) {
  if (a == b) throw ArgumentError("RZZ targets must differ");
  Gate g;
  g.kind = GateKind::RZZ;
  g.arity = 2;
  g.targets = {a, b};
  g.theta = theta;
  return g;
}

Gate Gate::dense1q(uint32_t q, const std::array<c64, 4>& m) {
  Gate g = fixed(GateKind::Dense1Q, q);
  g.matrix.assign(m.begin(), m.end());
  if (unitarity_defect(g.matrix, 2) > 1e-10) {
    throw ValidationError("Dense1Q matrix is not unitary");
  }
  return g;
}

Gate Gate::dense2q(uint32_t a, uint32_t b, const std::array<c64, 16>& m) {
  if (a == b) throw ArgumentError("Dense2Q targets must differ");
  Gate g;
  g.kind = GateKind::Dense2Q;
  g.arity = 2;
  g.targets = {a, b};
  g.matrix.assign(m.begin(), m.end());
  if (unitarity_defect(g.matrix, 4) > 1e-10) {
    throw ValidationError("Dense2Q matrix is not unitary");
  }
  return g;
}

bool Gate::is_clifford() const {
  switch (kind) {
    case GateKind::H:
    case GateKind::S:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CX:
      return true;
    default:
      return false;
  }
}

std::array<c64, 4> Gate::matrix_1q() const {
  const c64 j(0.0, 1.0);
  switch (kind) {
    case GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::S: return {1.0, 0.0, 0.0, j};
    case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -j, j, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::RX: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      return {c, -j * s, -j * s, c};
    }
    case GateKind::RZ: {
      return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
    }
    case GateKind::Dense1Q: return {matrix[0], matrix[1], matrix[2], matrix[3]};
    default: throw ArgumentError("not a one-qubit gate");
  }
}

std::array<c64, 16> Gate::matrix_2q() const {
  std::array<c64, 16> m{};
  switch (kind) {
    case GateKind::CX: {
      // Local basis: bit 0 = control (targets[0]), bit 1 = target.
      m[0 * 4 + 0] = 1.0;
      m[2 * 4 + 2] = 1.0;
      m[3 * 4 + 1] = 1.0;
      m[1 * 4 + 3] = 1.0;
      return m;
    }
    case GateKind::RZZ: {
      const c64 even = std::polar(1.0, -theta / 2), odd = std::polar(1.0, theta / 2);
      m[0] = even;
      m[1 * 4 + 1] = odd;
      m[2 * 4 + 2] = odd;
      m[3 * 4 + 3] = even;
      return m;
    }
    case GateKind::Dense2Q: {
      std::copy(matrix.begin(), matrix.end(), m.begin());
      return m;
    }
    default: throw ArgumentError("not a two-qubit gate");
  }
}

CircuitSeq& CircuitSeq::append(Gate g) {
  for (uint32_t i = 0; i < g.arity; ++i) {
    if (g.targets[i] >= n) throw ArgumentError("gate target out of range");
  }
  if (g.arity == 2 && g.targets[0] == g.targets[1]) {
    throw ArgumentError("two-qubit gate targets must be distinct");
  }
  gates.push_back(std::move(g));
  return *this;
}

void CircuitSeq::append_all(const CircuitSeq& other) {
  if (other.n != n) throw DimensionError("circuit widths differ");
  for (const Gate& g : other.gates) append(g);
}

bool CircuitSeq::is_clifford() const {
  for (const Gate& g : gates) {
    if (!g.is_clifford()) return false;
  }
  return true;
}

CircuitSeq bell_phase_pair_circuit(uint32_t n) {
  if (n == 0 || n % 2 != 0) throw ArgumentError("pairwise preparation needs even n");
  CircuitSeq c(n);
  for (uint32_t i = 0; i + 1 < n; i += 2) {
    c.append(Gate::h(i));
    c.append(Gate::t(i));
    c.append(Gate::cx(i, i + 1));
  }
  return c;
}

}  // namespace ruc
