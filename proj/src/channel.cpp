#include "ruc/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace ruc {

namespace {

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

void append_unitary_gates(CircuitSeq& c, const Unitary& u) {
  if (const auto* p = std::get_if<PauliString>(&u.op)) {
    for (uint32_t q = 0; q < p->num_qubits(); ++q) {
      switch (p->code(q)) {
        case Pauli::I: break;
        case Pauli::X: c.append(Gate::x(q)); break;
        case Pauli::Y: c.append(Gate::y(q)); break;
        case Pauli::Z: c.append(Gate::z(q)); break;
      }
    }
    return;
  }
  if (const auto* seq = std::get_if<CircuitSeq>(&u.op)) {
    c.append_all(*seq);
    return;
  }
  const auto& d = std::get<DenseMat>(u.op);
  if (d.k == 1) {
    c.append(Gate::dense1q(0, {d.m[0], d.m[1], d.m[2], d.m[3]}));
  } else if (d.k == 2) {
    std::array<c64, 16> m;
    std::copy(d.m.begin(), d.m.end(), m.begin());
    c.append(Gate::dense2q(0, 1, m));
  } else {
    throw UnsupportedGateError("3-qubit dense operators have no gate form");
  }
}

}  // namespace

DenseMat::DenseMat(uint32_t k_, std::vector<c64> m_) : k(k_), m(std::move(m_)) {
  if (k == 0 || k > 3) throw ArgumentError("dense operator supports 1 to 3 qubits");
  const size_t dim = size_t{1} << k;
  if (m.size() != dim * dim) throw DimensionError("dense operator matrix size mismatch");
  if (unitarity_defect(m, dim) > 1e-10) {
    throw ValidationError("dense operator is not unitary");
  }
}

uint32_t Unitary::num_qubits() const {
  if (const auto* p = std::get_if<PauliString>(&op)) return p->num_qubits();
  if (const auto* c = std::get_if<CircuitSeq>(&op)) return c->n;
  return std::get<DenseMat>(op).k;
}

CircuitSeq Unitary::as_circuit(uint32_t n) const {
  CircuitSeq c(n);
  append_unitary_gates(c, *this);
  return c;
}

RandomUnitaryChannel RandomUnitaryChannel::explicit_channel(std::vector<double> probs,
                                                            std::vector<Unitary> ops,
                                                            double sum_tol) {
  if (probs.empty() || probs.size() != ops.size()) {
    throw ArgumentError("explicit channel needs matching, nonempty probability/operator lists");
  }
  const uint32_t n = ops.front().num_qubits();
  if (n == 0) throw ArgumentError("channel needs at least one qubit");
  for (const Unitary& u : ops) {
    if (u.num_qubits() != n) throw DimensionError("channel operators act on different qubit counts");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("probabilities must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > sum_tol) {
    throw ValidationError("probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
  Explicit e;
  e.ops = std::move(ops);
  e.probs = std::move(probs);
  for (double& p : e.probs) p /= sum;
  e.cum.resize(e.probs.size());
  double acc = 0.0;
  for (size_t i = 0; i < e.probs.size(); ++i) {
    acc += e.probs[i];
    e.cum[i] = acc;
  }
  e.cum.back() = 1.0;
  return RandomUnitaryChannel(n, std::move(e));
}

RandomUnitaryChannel RandomUnitaryChannel::depolarizing(uint32_t n, double p) {
  if (n == 0) throw ArgumentError("channel needs at least one qubit");
  if (n > PauliString::kMaxSampledQubits) {
    throw CapacityError("depolarizing sampling requires n <= 31");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing strength must lie in [0, 1]");
  return RandomUnitaryChannel(n, Depolarizing{n, p});
}

RandomUnitaryChannel RandomUnitaryChannel::identity(uint32_t n) {
  return explicit_channel({1.0}, {Unitary(PauliString::identity(n))});
}

RandomUnitaryChannel RandomUnitaryChannel::compose(const RandomUnitaryChannel& after,
                                                   const RandomUnitaryChannel& before) {
  if (after.n_ != before.n_) throw DimensionError("composed channels act on different qubit counts");
  Composed steps;
  const auto take = [&steps](const RandomUnitaryChannel& c) {
    if (const auto* nested = std::get_if<Composed>(&c.form_)) {
      for (const auto& s : nested->steps) steps.steps.push_back(s);
    } else {
      steps.steps.push_back(c);
    }
  };
  take(before);
  take(after);
  return RandomUnitaryChannel(after.n_, std::move(steps));
}

size_t RandomUnitaryChannel::term_count() const {
  if (const auto* e = std::get_if<Explicit>(&form_)) return e->probs.size();
  if (const auto* d = std::get_if<Depolarizing>(&form_)) {
    if (d->n >= 32) return SIZE_MAX;
    return size_t{1} << (2 * d->n);
  }
  const auto& steps = std::get<Composed>(form_).steps;
  size_t total = 1;
  for (const auto& s : steps) {
    const size_t c = s.term_count();
    if (c != 0 && total > SIZE_MAX / c) return SIZE_MAX;
    total *= c;
  }
  return total;
}

Unitary RandomUnitaryChannel::sample_operator(Rng& rng) const {
  if (const auto* e = std::get_if<Explicit>(&form_)) {
    const double u = rng.next_double();
    const auto it = std::upper_bound(e->cum.begin(), e->cum.end(), u);
    const size_t i = std::min<size_t>(it - e->cum.begin(), e->cum.size() - 1);
    return e->ops[i];
  }
  if (const auto* d = std::get_if<Depolarizing>(&form_)) {
    if (rng.next_double() < 1.0 - d->p) return Unitary(PauliString::identity(d->n));
    return Unitary(PauliString::sample_nonidentity_uniform(d->n, rng));
  }
  const auto& steps = std::get<Composed>(form_).steps;
  CircuitSeq c(n_);
  for (const auto& s : steps) append_unitary_gates(c, s.sample_operator(rng));
  return Unitary(std::move(c));
}

RandomUnitaryChannel::Enumerated RandomUnitaryChannel::enumerate_explicit(size_t cap) const {
  if (term_count() > cap) {
    throw CapacityError("channel has " + std::to_string(term_count()) +
                        " terms, above the enumeration cap of " + std::to_string(cap));
  }
  Enumerated out;
  if (const auto* e = std::get_if<Explicit>(&form_)) {
    out.probs = e->probs;
    out.ops = e->ops;
    return out;
  }
  if (const auto* d = std::get_if<Depolarizing>(&form_)) {
    const size_t terms = size_t{1} << (2 * d->n);
    out.probs.reserve(terms);
    out.ops.reserve(terms);
    out.probs.push_back(1.0 - d->p);
    out.ops.emplace_back(PauliString::identity(d->n));
    const double each = d->p / static_cast<double>(terms - 1);
    for (size_t k = 1; k < terms; ++k) {
      out.probs.push_back(each);
      out.ops.emplace_back(PauliString::from_index(d->n, k));
    }
    return out;
  }

  const auto& steps = std::get<Composed>(form_).steps;
  std::vector<Enumerated> parts;
  parts.reserve(steps.size());
  for (const auto& s : steps) parts.push_back(s.enumerate_explicit(cap));
  // Outer product over per-step terms; operators concatenate in step order.
  out.probs.push_back(1.0);
  out.ops.emplace_back(CircuitSeq(n_));
  for (const Enumerated& part : parts) {
    Enumerated next;
    next.probs.reserve(out.probs.size() * part.probs.size());
    next.ops.reserve(next.probs.capacity());
    for (size_t i = 0; i < out.probs.size(); ++i) {
      for (size_t j = 0; j < part.probs.size(); ++j) {
        CircuitSeq c = std::get<CircuitSeq>(out.ops[i].op);
        append_unitary_gates(c, part.ops[j]);
        next.probs.push_back(out.probs[i] * part.probs[j]);
        next.ops.emplace_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace ruc
