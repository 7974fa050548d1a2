#include "ruc/tfim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "ruc/analytic.hpp"
#include "ruc/errors.hpp"

namespace ruc {

void TfimParams::validate() const {
  if (!(dt > 0.0)) throw ValidationError("step duration must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing strength must lie in [0, 1]");
}

Eigen::Matrix4cd tfim_hamiltonian(double J, double h) {
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  for (int b = 0; b < 4; ++b) {
    const double z0 = (b & 1) ? -1.0 : 1.0;
    const double z1 = (b & 2) ? -1.0 : 1.0;
    H(b, b) -= J * z0 * z1;
    H(b, b ^ 1) -= h;  // X on qubit 0
    H(b, b ^ 2) -= h;  // X on qubit 1
  }
  return H;
}

Eigen::Matrix4cd tfim_propagator(double J, double h, double dt) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(tfim_hamiltonian(J, h));
  Eigen::Vector4cd phases;
  for (int j = 0; j < 4; ++j) {
    phases(j) = std::polar(1.0, -es.eigenvalues()(j) * dt);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

TfimEigenbasis tfim_eigenbasis(double J, double h) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(tfim_hamiltonian(J, h));
  TfimEigenbasis out;
  out.energies = es.eigenvalues();
  out.vectors = es.eigenvectors();
  for (int j = 0; j < 4; ++j) {
    int argmax = 0;
    for (int i = 1; i < 4; ++i) {
      if (std::abs(out.vectors(i, j)) > std::abs(out.vectors(argmax, j))) argmax = i;
    }
    const c64 pivot = out.vectors(argmax, j);
    out.vectors.col(j) *= std::conj(pivot) / std::abs(pivot);
  }
  return out;
}

PopulationSeries tfim_exact_evolve(const TfimParams& params, const DensityMatrix& initial) {
  params.validate();
  if (initial.num_qubits() != 2) throw DimensionError("evolution is defined on two qubits");

  const Eigen::Matrix4cd U = tfim_propagator(params.J, params.h, params.dt);
  const Eigen::Matrix4cd V = tfim_eigenbasis(params.J, params.h).vectors;

  // The 16 conjugation terms of the two-qubit depolarizing channel.
  std::array<Eigen::Matrix4cd, 16> paulis;
  for (size_t k = 0; k < 16; ++k) {
    paulis[k] = pauli_matrix(PauliString::from_index(2, k));
  }
  const double p_rest = params.p / 15.0;

  PopulationSeries out;
  Eigen::Matrix4cd rho = initial.matrix();
  const auto record = [&](uint32_t k) {
    out.times.push_back(static_cast<double>(k) * params.dt);
    std::array<double, 4> comp{}, eig{};
    const Eigen::Matrix4cd in_eigen = V.adjoint() * rho * V;
    for (int i = 0; i < 4; ++i) {
      comp[static_cast<size_t>(i)] = rho(i, i).real();
      eig[static_cast<size_t>(i)] = in_eigen(i, i).real();
    }
    out.comp_basis.push_back(comp);
    out.eigen_basis.push_back(eig);
  };

  record(0);
  for (uint32_t k = 1; k <= params.steps; ++k) {
    rho = (U * rho * U.adjoint()).eval();
    Eigen::Matrix4cd mixed = (1.0 - params.p) * rho;
    for (size_t t = 1; t < 16; ++t) {
      mixed += p_rest * (paulis[t] * rho * paulis[t]);
    }
    rho = mixed;
    record(k);
  }
  return out;
}

DecayFit fit_decay_time(const std::vector<double>& times,
                        const std::vector<double>& populations) {
  if (times.size() != populations.size()) throw DimensionError("times/populations length mismatch");
  const size_t m = times.size();
  if (m < 5) throw ArgumentError("decay fit needs at least 5 points");

  const auto cost_of = [&](double a, double t1) {
    double acc = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = populations[i] - (a * std::exp(-times[i] / t1) + 0.25);
      acc += r * r;
    }
    return acc;
  };

  // Start from the first point's excess and the time it takes that excess
  // to drop by e (falls back to the span when it never does).
  double a = populations.front() - 0.25;
  if (std::abs(a) < 1e-9) a = (a < 0.0 ? -1e-9 : 1e-9);
  double t1 = times.back() - times.front();
  if (t1 <= 0.0) t1 = 1.0;
  for (size_t i = 1; i < m; ++i) {
    if (std::abs(populations[i] - 0.25) < std::abs(a) / std::numbers::e) {
      if (times[i] > times.front()) t1 = times[i] - times.front();
      break;
    }
  }

  double damping = 1e-3;
  double cost = cost_of(a, t1);
  uint32_t iter = 0;
  bool converged = false;
  for (; iter < 200; ++iter) {
    // Normal equations for parameters (a, t1).
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jtr0 = 0.0, jtr1 = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double e = std::exp(-times[i] / t1);
      const double r = populations[i] - (a * e + 0.25);
      const double j0 = e;
      const double j1 = a * e * times[i] / (t1 * t1);
      jtj00 += j0 * j0;
      jtj01 += j0 * j1;
      jtj11 += j1 * j1;
      jtr0 += j0 * r;
      jtr1 += j1 * r;
    }

    bool stepped = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      const double d00 = jtj00 * (1.0 + damping);
      const double d11 = jtj11 * (1.0 + damping);
      const double det = d00 * d11 - jtj01 * jtj01;
      if (std::abs(det) < 1e-300) break;
      const double da = (d11 * jtr0 - jtj01 * jtr1) / det;
      const double dt1 = (d00 * jtr1 - jtj01 * jtr0) / det;
      const double a_new = a + da;
      const double t1_new = t1 + dt1;
      if (t1_new > 0.0) {
        const double cost_new = cost_of(a_new, t1_new);
        if (cost_new <= cost) {
          const double rel_step = std::abs(dt1) / t1 + std::abs(da) / std::max(std::abs(a), 1e-12);
          a = a_new;
          t1 = t1_new;
          const double improved = cost - cost_new;
          cost = cost_new;
          damping = std::max(damping * 0.25, 1e-12);
          stepped = true;
          if (rel_step < 1e-12 || improved < 1e-18) converged = true;
          break;
        }
      }
      damping *= 4.0;
    }
    if (!stepped || converged) {
      converged = converged || !stepped;  // no acceptable step left: at a minimum
      break;
    }
  }
  if (!converged) {
    throw FitError("decay fit did not converge after " + std::to_string(iter) +
                   " iterations, residual cost " + std::to_string(cost));
  }

  // Covariance sigma^2 (J^T J)^-1 at the solution.
  double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double e = std::exp(-times[i] / t1);
    const double j0 = e;
    const double j1 = a * e * times[i] / (t1 * t1);
    jtj00 += j0 * j0;
    jtj01 += j0 * j1;
    jtj11 += j1 * j1;
  }
  const double det = jtj00 * jtj11 - jtj01 * jtj01;
  const double sigma_sq = cost / static_cast<double>(m > 2 ? m - 2 : 1);
  DecayFit fit;
  fit.t1 = t1;
  fit.amplitude = a;
  fit.iterations = iter;
  fit.t1_stderr = det > 0.0 ? std::sqrt(sigma_sq * jtj00 / det) : 0.0;
  return fit;
}

double predicted_decay_time(double dt, double p, uint32_t n) {
  if (!(dt > 0.0)) throw ArgumentError("step duration must be positive");
  const double lambda = depolarizing_lambda(n, p);
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("decay time defined only for mixing weight in (0, 1), got " +
                      std::to_string(lambda));
  }
  return -dt / std::log1p(-lambda);
}

}  // namespace ruc
