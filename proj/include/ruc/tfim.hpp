#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ruc/density.hpp"

namespace ruc {

// Two-site transverse-field Ising model H = -J Z0 Z1 - h (X0 + X1),
// evolved in discrete steps: unitary propagator exp(-i H dt), then a
// two-qubit depolarizing channel of strength p.
struct TfimParams {
  double J = 1.0;
  double h = 1.0;
  double dt = 0.25;
  uint32_t steps = 25;
  double p = 0.05;

  void validate() const;  // dt > 0, 0 <= p <= 1
};

Eigen::Matrix4cd tfim_hamiltonian(double J, double h);

// exp(-i H dt) via spectral decomposition; unitary within 1e-12.
Eigen::Matrix4cd tfim_propagator(double J, double h, double dt);

// Energies ascending; each eigenvector's largest-magnitude component made
// real positive so the basis is reproducible.
struct TfimEigenbasis {
  Eigen::Vector4d energies;
  Eigen::Matrix4cd vectors;  // columns
};
TfimEigenbasis tfim_eigenbasis(double J, double h);

// Populations at t = k dt for k = 0..steps, in the computational basis
// (diag rho) and the H eigenbasis (diag V^dag rho V).
struct PopulationSeries {
  std::vector<double> times;
  std::vector<std::array<double, 4>> comp_basis;
  std::vector<std::array<double, 4>> eigen_basis;
};

// Exact reference: rho <- U rho U^dag, then the literal 16-term
// depolarizing sum, per step.
PopulationSeries tfim_exact_evolve(const TfimParams& params, const DensityMatrix& initial);

// Least-squares fit of a exp(-t / t1) + 1/4.
struct DecayFit {
  double t1 = 0.0;
  double t1_stderr = 0.0;
  double amplitude = 0.0;
  uint32_t iterations = 0;
};
DecayFit fit_decay_time(const std::vector<double>& times, const std::vector<double>& populations);

// -dt / ln(1 - lambda): time for the traceless part, contracted by
// (1 - lambda) per step, to fall by 1/e. DomainError unless 0 < lambda < 1.
double predicted_decay_time(double dt, double p, uint32_t n = 2);

}  // namespace ruc
