#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ruc/channel.hpp"
#include "ruc/gates.hpp"
#include "ruc/observable.hpp"
#include "ruc/pauli.hpp"

namespace ruc {

// Exact density-matrix reference for small systems. Basis index bit j is
// qubit j. Built on full 2^n x 2^n matrices, so capped at n <= 6.
class DensityMatrix {
 public:
  static constexpr uint32_t kMaxQubits = 6;

  // |0...0><0...0|
  static DensityMatrix zero_state(uint32_t n);
  static DensityMatrix maximally_mixed(uint32_t n);
  // amp need not be normalized; rho = v v^dag / <v|v>.
  static DensityMatrix pure(uint32_t n, const Eigen::VectorXcd& amp);
  // Validates Hermiticity (1e-10), unit trace (1e-10), positivity (-1e-8).
  static DensityMatrix from_matrix(uint32_t n, Eigen::MatrixXcd rho);

  uint32_t num_qubits() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

  double expectation(const PauliString& p) const;
  double expectation(const Observable& o) const;
  // Computational-basis populations, re(diag).
  std::vector<double> diagonal() const;

  void validate(double herm_tol = 1e-10, double trace_tol = 1e-10,
                double eig_floor = -1e-8) const;

 private:
  DensityMatrix(uint32_t n, Eigen::MatrixXcd rho) : n_(n), rho_(std::move(rho)) {}

  uint32_t n_ = 0;
  Eigen::MatrixXcd rho_;
};

// Full-space matrices, independent of the statevector kernels.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);
Eigen::MatrixXcd gate_matrix(const Gate& g, uint32_t n);
Eigen::MatrixXcd circuit_matrix(const CircuitSeq& c);
Eigen::MatrixXcd unitary_matrix(const Unitary& u, uint32_t n);
Eigen::MatrixXcd observable_matrix(const Observable& o);

DensityMatrix apply_unitary_exact(const DensityMatrix& rho, const Unitary& u);
// sum_i p_i U_i rho U_i^dag over the enumerated channel.
DensityMatrix apply_channel_exact(const DensityMatrix& rho, const RandomUnitaryChannel& channel,
                                  size_t cap = RandomUnitaryChannel::kDefaultEnumCap);

}  // namespace ruc
