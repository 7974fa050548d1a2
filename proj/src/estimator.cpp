#include "ruc/estimator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "ruc/density.hpp"
#include "ruc/errors.hpp"

namespace ruc {

namespace {

void append_bits(std::string& key, double v) {
  key += std::to_string(std::bit_cast<uint64_t>(v));
  key += ',';
}

std::string circuit_key(const CircuitSeq& c) {
  std::string key = "C:";
  for (const Gate& g : c.gates) {
    key += gate_kind_name(g.kind);
    key += ',';
    for (uint32_t i = 0; i < g.arity; ++i) {
      key += std::to_string(g.targets[i]);
      key += ',';
    }
    if (g.kind == GateKind::RX || g.kind == GateKind::RZ || g.kind == GateKind::RZZ) {
      append_bits(key, g.theta);
    }
    for (const c64& e : g.matrix) {
      append_bits(key, e.real());
      append_bits(key, e.imag());
    }
    key += ';';
  }
  return key;
}

// Grouping identity of a sampled operator. Dense-matrix draws are kept
// separate (keyed by draw index): float-exact matrix comparison would group
// almost nothing and a near-match is still a different operator.
std::string op_key(const Unitary& u, uint64_t draw_index) {
  if (const auto* p = std::get_if<PauliString>(&u.op)) return "P:" + p->text();
  if (const auto* c = std::get_if<CircuitSeq>(&u.op)) return circuit_key(*c);
  return "D:#" + std::to_string(draw_index);
}

struct Groups {
  std::vector<Unitary> ops;            // first-draw order
  std::vector<std::string> keys;
  std::vector<uint64_t> counts;
  std::vector<uint32_t> group_of;      // per shot
};

// Per-shot operator draws, each from its own substream, grouped by identity.
Groups draw_groups(const RandomUnitaryChannel& channel, uint64_t n_shots, uint64_t seed,
                   uint64_t tag_hash) {
  Groups g;
  g.group_of.resize(n_shots);
  std::unordered_map<std::string, uint32_t> index;
  for (uint64_t i = 0; i < n_shots; ++i) {
    Rng rng = substream(seed, tag_hash, kLaneDraw, i);
    Unitary op = channel.sample_operator(rng);
    std::string key = op_key(op, i);
    auto [it, fresh] = index.try_emplace(key, static_cast<uint32_t>(g.ops.size()));
    if (fresh) {
      g.ops.push_back(std::move(op));
      g.keys.push_back(std::move(key));
      g.counts.push_back(0);
    }
    g.counts[it->second] += 1;
    g.group_of[i] = it->second;
  }
  return g;
}

void check_backend_supports(const Preparation& prep, const Groups& groups) {
  if (prep.backend != Backend::Stabilizer) return;
  for (const Unitary& u : groups.ops) {
    if (std::holds_alternative<DenseMat>(u.op)) {
      throw UnsupportedGateError("stabilizer backend cannot apply dense operators");
    }
    if (const auto* c = std::get_if<CircuitSeq>(&u.op)) {
      if (!c->is_clifford()) {
        throw UnsupportedGateError("stabilizer backend cannot apply non-Clifford operators");
      }
    }
  }
}

DensityMatrix prep_density(const Preparation& prep) {
  DensityMatrix rho = DensityMatrix::zero_state(prep.n);
  const CircuitSeq c = prep.as_circuit();
  if (c.gates.empty()) return rho;
  return apply_unitary_exact(rho, Unitary(c));
}

struct Moments {
  double first = 0.0;       // sum_i p_i <O>_i
  double second_obs = 0.0;  // sum_i p_i <O^2>_i      (shot-mode second moment)
  double second_val = 0.0;  // sum_i p_i <O>_i^2      (exact-mode second moment)
};

Moments per_term_moments(const RandomUnitaryChannel& channel, const Preparation& prep,
                         const Observable& o, size_t cap) {
  if (o.num_qubits() != channel.num_qubits() || prep.n != channel.num_qubits()) {
    throw DimensionError("channel, preparation and observable qubit counts differ");
  }
  const DensityMatrix rho = prep_density(prep);
  const Eigen::MatrixXcd om = observable_matrix(o);
  const Eigen::MatrixXcd osq = om * om;
  const auto terms = channel.enumerate_explicit(cap);
  Moments mom;
  for (size_t i = 0; i < terms.probs.size(); ++i) {
    const Eigen::MatrixXcd u = unitary_matrix(terms.ops[i], prep.n);
    const Eigen::MatrixXcd rho_i = u * rho.matrix() * u.adjoint();
    const double t = (om * rho_i).trace().real();
    mom.first += terms.probs[i] * t;
    mom.second_obs += terms.probs[i] * (osq * rho_i).trace().real();
    mom.second_val += terms.probs[i] * t * t;
  }
  return mom;
}

// Exact-reference variance for the report, when the channel is small enough
// to enumerate and the flipless formulas apply.
std::optional<double> auto_predicted_variance(const RandomUnitaryChannel& channel,
                                              const Preparation& prep,
                                              const PauliString& observable, uint64_t n_shots,
                                              const EstimateOptions& opts) {
  if (!opts.auto_variance || opts.p_flip != 0.0 || !channel.is_enumerable() ||
      channel.num_qubits() > DensityMatrix::kMaxQubits) {
    return std::nullopt;
  }
  const EstimateMode mode = opts.mode;
  const Moments mom = per_term_moments(channel, prep, Observable(observable),
                                       RandomUnitaryChannel::kDefaultEnumCap);
  const double second = mode == EstimateMode::Shot ? mom.second_obs : mom.second_val;
  return std::max(0.0, second - mom.first * mom.first) / static_cast<double>(n_shots);
}

}  // namespace

Preparation Preparation::zero(uint32_t n, Backend b) {
  Preparation p;
  p.n = n;
  p.backend = b;
  p.kind = Kind::Zero;
  return p;
}

Preparation Preparation::bell_phase_pairs(uint32_t n, Backend b) {
  Preparation p;
  p.n = n;
  p.backend = b;
  p.kind = Kind::BellPhasePairs;
  return p;
}

Preparation Preparation::from_circuit(CircuitSeq c, Backend b) {
  Preparation p;
  p.n = c.n;
  p.backend = b;
  p.kind = Kind::Circuit;
  p.circuit = std::move(c);
  return p;
}

QuantumState Preparation::make_state() const {
  if (kind == Kind::BellPhasePairs) return prepare_bell_phase_pairs(n, backend, dense_cap);
  QuantumState s = prepare_zero(n, backend, dense_cap);
  if (kind == Kind::Circuit) apply_circuit(s, circuit);
  return s;
}

CircuitSeq Preparation::as_circuit() const {
  switch (kind) {
    case Kind::Zero: return CircuitSeq(n);
    case Kind::BellPhasePairs: return bell_phase_pair_circuit(n);
    default: return circuit;
  }
}

void apply_unitary(QuantumState& s, const Unitary& u) {
  if (u.num_qubits() != num_qubits(s)) throw DimensionError("operator qubit count mismatch");
  if (const auto* p = std::get_if<PauliString>(&u.op)) {
    apply_pauli(s, *p);
    return;
  }
  if (const auto* c = std::get_if<CircuitSeq>(&u.op)) {
    apply_circuit(s, *c);
    return;
  }
  const auto& d = std::get<DenseMat>(u.op);
  std::vector<uint32_t> qs(d.k);
  for (uint32_t i = 0; i < d.k; ++i) qs[i] = i;
  if (auto* st = std::get_if<DenseState>(&s)) {
    st->apply_dense_op(qs, d.m);
  } else if (auto* st = std::get_if<FactoredState>(&s)) {
    st->apply_dense_op(qs, d.m);
  } else {
    throw UnsupportedGateError("stabilizer backend cannot apply dense operators");
  }
}

ShotPlan allocate_shots(const RandomUnitaryChannel& channel, uint64_t n_shots, Rng& rng) {
  if (n_shots == 0) throw ArgumentError("shot count must be positive");
  ShotPlan plan;
  plan.total = n_shots;
  std::unordered_map<std::string, size_t> index;
  for (uint64_t i = 0; i < n_shots; ++i) {
    Unitary op = channel.sample_operator(rng);
    std::string key = op_key(op, i);
    auto [it, fresh] = index.try_emplace(key, plan.draws.size());
    if (fresh) plan.draws.push_back({std::move(op), 0});
    plan.draws[it->second].count += 1;
  }
  return plan;
}

const char* estimate_mode_name(EstimateMode m) {
  return m == EstimateMode::Shot ? "shot" : "exact-subcircuit";
}

double outcome_flip_probability(uint32_t weight, double p_flip) {
  if (!(p_flip >= 0.0 && p_flip <= 1.0)) {
    throw ValidationError("flip probability must lie in [0, 1]");
  }
  return (1.0 - std::pow(1.0 - 2.0 * p_flip, static_cast<double>(weight))) / 2.0;
}

EstimateReport estimate(const RandomUnitaryChannel& channel, const Preparation& prep,
                        const PauliString& observable, uint64_t n_shots, uint64_t seed,
                        const std::string& tag, const EstimateOptions& opts) {
  if (n_shots == 0) throw ArgumentError("shot count must be positive");
  if (observable.is_identity()) {
    throw ArgumentError("identity observable has the deterministic value 1");
  }
  if (observable.num_qubits() != channel.num_qubits() || prep.n != channel.num_qubits()) {
    throw DimensionError("channel, preparation and observable qubit counts differ");
  }

  const uint64_t tag_hash = hash_tag(tag);
  Groups groups = draw_groups(channel, n_shots, seed, tag_hash);
  check_backend_supports(prep, groups);
  const QuantumState base = prep.make_state();
  const size_t n_groups = groups.ops.size();
  const double q_flip = outcome_flip_probability(observable.weight(), opts.p_flip);

  // Shots of each group, in shot order, so group workers can draw each
  // shot's own outcome substream.
  std::vector<std::vector<uint64_t>> members(n_groups);
  for (size_t g = 0; g < n_groups; ++g) members[g].reserve(groups.counts[g]);
  for (uint64_t i = 0; i < n_shots; ++i) members[groups.group_of[i]].push_back(i);

  std::vector<int8_t> outcomes;  // shot mode
  if (opts.mode == EstimateMode::Shot) outcomes.resize(n_shots);
  std::vector<double> group_value(n_groups, 0.0);  // exact mode
  std::string error_msg;

#pragma omp parallel for schedule(dynamic)
  for (size_t g = 0; g < n_groups; ++g) {
    try {
      QuantumState state = base;
      apply_unitary(state, groups.ops[g]);
      if (opts.mode == EstimateMode::ExactSubcircuit) {
        group_value[g] = (1.0 - 2.0 * q_flip) * expectation(state, observable);
        continue;
      }
      const bool collapsing = std::holds_alternative<StabilizerState>(state);
      double mean = 0.0;
      if (!collapsing) mean = expectation(state, observable);
      for (const uint64_t i : members[g]) {
        Rng rng = substream(seed, tag_hash, kLaneOutcome, i);
        int s;
        if (collapsing) {
          QuantumState fresh = state;
          s = sample_pauli_eigenvalue(fresh, observable, rng);
        } else {
          s = sample_eigenvalue_from_mean(mean, rng);
        }
        if (opts.p_flip > 0.0 && rng.next_bernoulli(q_flip)) s = -s;
        outcomes[i] = static_cast<int8_t>(s);
      }
    } catch (const std::exception& e) {
#pragma omp critical
      if (error_msg.empty()) error_msg = e.what();
    }
  }
  if (!error_msg.empty()) throw Error(error_msg);

  EstimateReport report;
  report.n_shots = n_shots;
  report.seed = seed;
  report.tag = tag;
  report.mode = opts.mode;
  report.per_draw.resize(n_groups);

  double sum = 0.0, sum_sq = 0.0;
  if (opts.mode == EstimateMode::Shot) {
    int64_t total = 0;
    for (uint64_t i = 0; i < n_shots; ++i) total += outcomes[i];
    for (size_t g = 0; g < n_groups; ++g) {
      int64_t gsum = 0;
      for (const uint64_t i : members[g]) gsum += outcomes[i];
      report.per_draw[g] = {groups.keys[g], groups.counts[g],
                            static_cast<double>(gsum) / static_cast<double>(groups.counts[g])};
    }
    sum = static_cast<double>(total);
    sum_sq = static_cast<double>(n_shots);  // outcomes are +-1
  } else {
    for (size_t g = 0; g < n_groups; ++g) {
      const double c = static_cast<double>(groups.counts[g]);
      sum += c * group_value[g];
      sum_sq += c * group_value[g] * group_value[g];
      report.per_draw[g] = {groups.keys[g], groups.counts[g], group_value[g]};
    }
  }
  report.mean = sum / static_cast<double>(n_shots);
  if (n_shots > 1) {
    const double nd = static_cast<double>(n_shots);
    const double sample_var = std::max(0.0, (sum_sq - nd * report.mean * report.mean) / (nd - 1.0));
    report.empirical_variance = sample_var / nd;
  }

  report.predicted_variance =
      auto_predicted_variance(channel, prep, observable, n_shots, opts);
  return report;
}

namespace reference {

EstimateReport estimate_serial(const RandomUnitaryChannel& channel, const Preparation& prep,
                               const PauliString& observable, uint64_t n_shots, uint64_t seed,
                               const std::string& tag, const EstimateOptions& opts) {
  if (n_shots == 0) throw ArgumentError("shot count must be positive");
  if (observable.is_identity()) {
    throw ArgumentError("identity observable has the deterministic value 1");
  }
  if (observable.num_qubits() != channel.num_qubits() || prep.n != channel.num_qubits()) {
    throw DimensionError("channel, preparation and observable qubit counts differ");
  }

  const uint64_t tag_hash = hash_tag(tag);
  const double q_flip = outcome_flip_probability(observable.weight(), opts.p_flip);

  EstimateReport report;
  report.n_shots = n_shots;
  report.seed = seed;
  report.tag = tag;
  report.mode = opts.mode;

  std::unordered_map<std::string, size_t> index;
  std::vector<Unitary> ops;
  std::vector<std::string> keys;
  std::vector<uint64_t> counts;
  std::vector<int64_t> group_sum;
  std::vector<uint32_t> group_of(n_shots);

  int64_t total = 0;
  for (uint64_t i = 0; i < n_shots; ++i) {
    Rng draw_rng = substream(seed, tag_hash, kLaneDraw, i);
    Unitary op = channel.sample_operator(draw_rng);
    std::string key = op_key(op, i);
    auto [it, fresh] = index.try_emplace(key, ops.size());
    if (fresh) {
      ops.push_back(std::move(op));
      keys.push_back(std::move(key));
      counts.push_back(0);
      group_sum.push_back(0);
    }
    counts[it->second] += 1;
    group_of[i] = static_cast<uint32_t>(it->second);

    if (opts.mode == EstimateMode::Shot) {
      QuantumState state = prep.make_state();
      apply_unitary(state, ops[it->second]);
      Rng outcome_rng = substream(seed, tag_hash, kLaneOutcome, i);
      int s = sample_pauli_eigenvalue(state, observable, outcome_rng);
      if (opts.p_flip > 0.0 && outcome_rng.next_bernoulli(q_flip)) s = -s;
      total += s;
      group_sum[it->second] += s;
    }
  }

  report.per_draw.resize(ops.size());
  double sum = 0.0, sum_sq = 0.0;
  if (opts.mode == EstimateMode::Shot) {
    for (size_t g = 0; g < ops.size(); ++g) {
      report.per_draw[g] = {keys[g], counts[g],
                            static_cast<double>(group_sum[g]) / static_cast<double>(counts[g])};
    }
    sum = static_cast<double>(total);
    sum_sq = static_cast<double>(n_shots);
  } else {
    // One exact evaluation per distinct operator, weighted by its draws.
    for (size_t g = 0; g < ops.size(); ++g) {
      QuantumState state = prep.make_state();
      apply_unitary(state, ops[g]);
      const double t = (1.0 - 2.0 * q_flip) * expectation(state, observable);
      const double c = static_cast<double>(counts[g]);
      sum += c * t;
      sum_sq += c * t * t;
      report.per_draw[g] = {keys[g], counts[g], t};
    }
  }
  report.mean = sum / static_cast<double>(n_shots);
  if (n_shots > 1) {
    const double nd = static_cast<double>(n_shots);
    const double sample_var = std::max(0.0, (sum_sq - nd * report.mean * report.mean) / (nd - 1.0));
    report.empirical_variance = sample_var / nd;
  }

  report.predicted_variance =
      auto_predicted_variance(channel, prep, observable, n_shots, opts);
  return report;
}

}  // namespace reference

double predicted_variance_hybrid(const RandomUnitaryChannel& channel, const Preparation& prep,
                                 const Observable& o, uint64_t n_shots, size_t cap) {
  if (n_shots == 0) throw ArgumentError("shot count must be positive");
  const Moments mom = per_term_moments(channel, prep, o, cap);
  return std::max(0.0, mom.second_obs - mom.first * mom.first) / static_cast<double>(n_shots);
}

double predicted_variance_stinespring(const RandomUnitaryChannel& channel,
                                      const Preparation& prep, const Observable& o,
                                      uint64_t n_shots, size_t cap) {
  if (n_shots == 0) throw ArgumentError("shot count must be positive");
  if (o.num_qubits() != channel.num_qubits() || prep.n != channel.num_qubits()) {
    throw DimensionError("channel, preparation and observable qubit counts differ");
  }
  const DensityMatrix rho_out = apply_channel_exact(prep_density(prep), channel, cap);
  const Eigen::MatrixXcd om = observable_matrix(o);
  const Eigen::MatrixXcd osq = om * om;
  const double first = (om * rho_out.matrix()).trace().real();
  const double second = (osq * rho_out.matrix()).trace().real();
  return std::max(0.0, second - first * first) / static_cast<double>(n_shots);
}

double mse(const std::vector<double>& measured, const std::vector<double>& analytic) {
  if (measured.empty() || measured.size() != analytic.size()) {
    throw DimensionError("mse needs equal-length, nonempty inputs");
  }
  double acc = 0.0;
  for (size_t i = 0; i < measured.size(); ++i) {
    const double d = measured[i] - analytic[i];
    acc += d * d;
  }
  return acc / static_cast<double>(measured.size());
}

}  // namespace ruc
