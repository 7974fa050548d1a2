#include "ruc/ancilla.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ruc/errors.hpp"

namespace ruc {

namespace {

uint32_t ceil_log2(uint64_t m) {
  return m <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(m - 1));
}

Gate ry_gate(uint32_t q, double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return Gate::dense1q(q, {c64(c), c64(-s), c64(s), c64(c)});
}

}  // namespace

CircuitSeq build_state_prep(const std::vector<double>& probs) {
  if (probs.empty()) throw ArgumentError("state prep needs at least one probability");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }

  const uint32_t a = ceil_log2(probs.size());
  CircuitSeq circuit(a);
  if (a == 0) return circuit;

  // weights[l][j]: total probability of the subtree whose top l bits read j.
  std::vector<std::vector<double>> weights(a + 1);
  weights[a].assign(size_t{1} << a, 0.0);
  for (size_t i = 0; i < probs.size(); ++i) weights[a][i] = probs[i] / sum;
  for (uint32_t l = a; l-- > 0;) {
    weights[l].assign(size_t{1} << l, 0.0);
    for (size_t j = 0; j < weights[l].size(); ++j) {
      weights[l][j] = weights[l + 1][2 * j] + weights[l + 1][2 * j + 1];
    }
  }

  for (uint32_t l = 0; l < a; ++l) {
    const uint32_t t = a - 1 - l;  // split on the most significant bit first
    const size_t k = size_t{1} << l;
    std::vector<double> theta(k);
    bool any = false;
    for (size_t j = 0; j < k; ++j) {
      theta[j] = 2.0 * std::atan2(std::sqrt(weights[l + 1][2 * j + 1]),
                                  std::sqrt(weights[l + 1][2 * j]));
      any = any || theta[j] != 0.0;
    }
    if (!any) continue;
    if (l == 0) {
      circuit.append(ry_gate(t, theta[0]));
      continue;
    }
    // Gray-code form: rotation angles mix as phi = M theta / k with
    // M[s][j] = (-1)^popcount(gray(s) & j); the CX after slot s targets the
    // control bit where gray(s) and gray(s+1) differ (cyclically).
    for (size_t s = 0; s < k; ++s) {
      const uint64_t gray = s ^ (s >> 1);
      double phi = 0.0;
      for (size_t j = 0; j < k; ++j) {
        phi += (std::popcount(gray & j) & 1) ? -theta[j] : theta[j];
      }
      phi /= static_cast<double>(k);
      if (phi != 0.0) circuit.append(ry_gate(t, phi));
      const uint32_t beta = std::min(static_cast<uint32_t>(std::countr_zero(s + 1)), l - 1);
      circuit.append(Gate::cx(t + 1 + beta, t));
    }
  }
  return circuit;
}

DilatedCircuit build_dilated(const RandomUnitaryChannel& channel, size_t max_terms) {
  const auto terms = channel.enumerate_explicit(max_terms);
  DilatedCircuit d;
  d.n_target = channel.num_qubits();
  d.n_ancilla = ceil_log2(terms.probs.size());
  d.prep = build_state_prep(terms.probs);
  d.multiplexer.reserve(terms.ops.size());
  for (size_t i = 0; i < terms.ops.size(); ++i) {
    d.multiplexer.emplace_back(static_cast<uint64_t>(i), terms.ops[i]);
  }
  return d;
}

double run_dilated_expectation(const DilatedCircuit& d, const CircuitSeq& prep_target,
                               const Observable& o, uint32_t dense_cap) {
  if (prep_target.n != d.n_target) throw DimensionError("target prep width mismatch");
  if (o.num_qubits() != d.n_target) throw DimensionError("observable width mismatch");
  const uint32_t total = d.n_target + d.n_ancilla;
  DenseState state(total, dense_cap);

  for (const Gate& g : prep_target.gates) state.apply_gate(g);
  for (Gate g : d.prep.gates) {
    for (uint32_t i = 0; i < g.arity; ++i) g.targets[i] += d.n_target;
    state.apply_gate(g);
  }

  const size_t block_len = size_t{1} << d.n_target;
  for (const auto& [pattern, op] : d.multiplexer) {
    auto block = state.amplitudes().subspan(pattern * block_len, block_len);
    DenseState sub = DenseState::from_amplitudes(
        d.n_target, std::vector<c64>(block.begin(), block.end()), dense_cap);
    if (const auto* p = std::get_if<PauliString>(&op.op)) {
      sub.apply_pauli(*p);
    } else if (const auto* c = std::get_if<CircuitSeq>(&op.op)) {
      sub.apply_circuit(*c);
    } else {
      const auto& m = std::get<DenseMat>(op.op);
      std::vector<uint32_t> qs(m.k);
      for (uint32_t i = 0; i < m.k; ++i) qs[i] = i;
      sub.apply_dense_op(qs, m.m);
    }
    std::copy(sub.amplitudes().begin(), sub.amplitudes().end(), block.begin());
  }

  double acc = 0.0;
  for (const auto& [coeff, term] : o.terms) {
    PauliString ext = PauliString::identity(total);
    for (uint32_t q = 0; q < d.n_target; ++q) ext.set(q, term.code(q));
    acc += coeff * state.expectation(ext);
  }
  return acc;
}

ResourceEstimate resource_estimate(uint32_t n, uint64_t m) {
  if (n == 0) throw ArgumentError("need at least one target qubit");
  if (m == 0) throw ArgumentError("need at least one channel term");
  ResourceEstimate r;
  r.controls_per_op = ceil_log2(m);
  r.qubits = n + r.controls_per_op;
  r.depth_lower_bound = m;
  r.circuits = 1;
  r.controlled_op_count = m;
  return r;
}

}  // namespace ruc
