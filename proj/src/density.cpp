#include "ruc/density.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "ruc/errors.hpp"

namespace ruc {

namespace {

void check_small(uint32_t n) {
  if (n == 0) throw ArgumentError("density matrix needs at least one qubit");
  if (n > DensityMatrix::kMaxQubits) {
    throw CapacityError("density matrix supports at most " +
                        std::to_string(DensityMatrix::kMaxQubits) + " qubits");
  }
}

Eigen::Matrix2cd single_pauli(Pauli code) {
  const c64 i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (code) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

DensityMatrix DensityMatrix::zero_state(uint32_t n) {
  check_small(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityMatrix(n, std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(uint32_t n) {
  check_small(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return DensityMatrix(n, Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(uint32_t n, const Eigen::VectorXcd& amp) {
  check_small(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (amp.size() != dim) throw DimensionError("statevector length is not 2^n");
  const double nrm = amp.squaredNorm();
  if (nrm <= 0.0) throw ArgumentError("statevector has zero norm");
  return DensityMatrix(n, (amp * amp.adjoint()) / nrm);
}

DensityMatrix DensityMatrix::from_matrix(uint32_t n, Eigen::MatrixXcd rho) {
  check_small(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho.rows() != dim || rho.cols() != dim) throw DimensionError("matrix is not 2^n x 2^n");
  DensityMatrix out(n, std::move(rho));
  out.validate();
  return out;
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_floor) const {
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) {
    throw ValidationError("density matrix not Hermitian, defect " + std::to_string(herm));
  }
  const double tr_err = std::abs(rho_.trace() - c64(1.0, 0.0));
  if (tr_err > trace_tol) {
    throw ValidationError("density matrix trace off by " + std::to_string(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho_ + rho_.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < eig_floor) {
    throw ValidationError("density matrix has eigenvalue " + std::to_string(min_eig));
  }
}

double DensityMatrix::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw DimensionError("observable qubit count mismatch");
  return (pauli_matrix(p) * rho_).trace().real();
}

double DensityMatrix::expectation(const Observable& o) const {
  double acc = 0.0;
  for (const auto& [coeff, p] : o.terms) acc += coeff * expectation(p);
  return acc;
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> d(static_cast<size_t>(rho_.rows()));
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) d[static_cast<size_t>(i)] = rho_(i, i).real();
  return d;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  check_small(p.num_qubits());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  // kron(A, B) places B on the low bits, so build qubit 0 first.
  for (uint32_t q = 0; q < p.num_qubits(); ++q) {
    full = Eigen::kroneckerProduct(single_pauli(p.code(q)), full).eval();
  }
  return full;
}

Eigen::MatrixXcd gate_matrix(const Gate& g, uint32_t n) {
  check_small(n);
  const uint64_t dim = uint64_t{1} << n;
  const uint32_t k = g.arity;
  const uint64_t kdim = uint64_t{1} << k;
  std::vector<c64> local(kdim * kdim);
  if (k == 1) {
    const auto m = g.matrix_1q();
    std::copy(m.begin(), m.end(), local.begin());
  } else {
    const auto m = g.matrix_2q();
    std::copy(m.begin(), m.end(), local.begin());
  }

  uint64_t target_mask = 0;
  for (uint32_t i = 0; i < k; ++i) target_mask |= uint64_t{1} << g.targets[i];
  const auto scatter = [&](uint64_t local_bits) {
    uint64_t out = 0;
    for (uint32_t i = 0; i < k; ++i) {
      if (local_bits >> i & 1) out |= uint64_t{1} << g.targets[i];
    }
    return out;
  };

  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim));
  for (uint64_t rest = 0; rest < dim; ++rest) {
    if (rest & target_mask) continue;
    for (uint64_t a = 0; a < kdim; ++a) {
      for (uint64_t b = 0; b < kdim; ++b) {
        full(static_cast<Eigen::Index>(rest | scatter(a)),
             static_cast<Eigen::Index>(rest | scatter(b))) = local[a * kdim + b];
      }
    }
  }
  return full;
}

Eigen::MatrixXcd circuit_matrix(const CircuitSeq& c) {
  check_small(c.n);
  const Eigen::Index dim = Eigen::Index{1} << c.n;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Gate& g : c.gates) full = (gate_matrix(g, c.n) * full).eval();
  return full;
}

Eigen::MatrixXcd unitary_matrix(const Unitary& u, uint32_t n) {
  if (u.num_qubits() != n) throw DimensionError("operator qubit count mismatch");
  if (const auto* p = std::get_if<PauliString>(&u.op)) return pauli_matrix(*p);
  if (const auto* c = std::get_if<CircuitSeq>(&u.op)) return circuit_matrix(*c);
  const auto& d = std::get<DenseMat>(u.op);
  const Eigen::Index dim = Eigen::Index{1} << d.k;
  Eigen::MatrixXcd full(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      full(r, c) = d.m[static_cast<size_t>(r * dim + c)];
    }
  }
  return full;
}

Eigen::MatrixXcd observable_matrix(const Observable& o) {
  const uint32_t n = o.num_qubits();
  check_small(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [coeff, p] : o.terms) full += coeff * pauli_matrix(p);
  return full;
}

DensityMatrix apply_unitary_exact(const DensityMatrix& rho, const Unitary& u) {
  const Eigen::MatrixXcd m = unitary_matrix(u, rho.num_qubits());
  return DensityMatrix::from_matrix(rho.num_qubits(), m * rho.matrix() * m.adjoint());
}

DensityMatrix apply_channel_exact(const DensityMatrix& rho, const RandomUnitaryChannel& channel,
                                  size_t cap) {
  if (channel.num_qubits() != rho.num_qubits()) {
    throw DimensionError("channel qubit count mismatch");
  }
  const auto terms = channel.enumerate_explicit(cap);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (size_t i = 0; i < terms.probs.size(); ++i) {
    const Eigen::MatrixXcd m = unitary_matrix(terms.ops[i], rho.num_qubits());
    out += terms.probs[i] * (m * rho.matrix() * m.adjoint());
  }
  return DensityMatrix::from_matrix(rho.num_qubits(), std::move(out));
}

}  // namespace ruc
