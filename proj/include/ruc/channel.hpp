#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ruc/gates.hpp"
#include "ruc/pauli.hpp"
#include "ruc/rng.hpp"

namespace ruc {

// Dense unitary on k <= 3 qubits, row-major over little-endian local indices.
struct DenseMat {
  uint32_t k = 0;
  std::vector<c64> m;

  DenseMat() = default;
  DenseMat(uint32_t k_, std::vector<c64> m_);  // validates unitarity (1e-10)
};

// One operator of a random-unitary channel, in whichever form it was given.
struct Unitary {
  std::variant<PauliString, CircuitSeq, DenseMat> op;

  Unitary() : op(PauliString()) {}
  explicit Unitary(PauliString p) : op(std::move(p)) {}
  explicit Unitary(CircuitSeq c) : op(std::move(c)) {}
  explicit Unitary(DenseMat d) : op(std::move(d)) {}

  uint32_t num_qubits() const;
  // Gate-sequence form; UnsupportedGateError for 3-qubit dense matrices.
  CircuitSeq as_circuit(uint32_t n) const;
};

// Mixture of unitaries rho -> sum_i p_i U_i rho U_i^dag, represented either
// explicitly (probability/operator table), implicitly (uniform non-identity
// depolarizing over n qubits), or as an ordered composition of channels.
class RandomUnitaryChannel {
 public:
  static constexpr size_t kDefaultEnumCap = 4096;

  struct Explicit {
    std::vector<double> probs;  // renormalized; cumulative table kept for draws
    std::vector<Unitary> ops;
    std::vector<double> cum;
  };
  struct Depolarizing {
    uint32_t n = 0;
    double p = 0.0;
  };
  struct Composed {
    std::vector<RandomUnitaryChannel> steps;  // steps[0] acts first
  };

  // Probabilities must sum to 1 within `sum_tol`; they are renormalized so
  // the stored table is exact. The parser passes a looser 1e-6 for
  // hand-written files.
  static RandomUnitaryChannel explicit_channel(std::vector<double> probs,
                                               std::vector<Unitary> ops,
                                               double sum_tol = 1e-12);
  // Identity with probability 1-p, each of the 4^n - 1 non-identity Pauli
  // strings with probability p / (4^n - 1). Requires n <= 31.
  static RandomUnitaryChannel depolarizing(uint32_t n, double p);
  static RandomUnitaryChannel identity(uint32_t n);
  // Channel equal to running `before`, then `after`.
  static RandomUnitaryChannel compose(const RandomUnitaryChannel& after,
                                      const RandomUnitaryChannel& before);

  uint32_t num_qubits() const { return n_; }
  const std::variant<Explicit, Depolarizing, Composed>& form() const { return form_; }

  // Number of explicit terms, saturating at SIZE_MAX.
  size_t term_count() const;
  bool is_enumerable(size_t cap = kDefaultEnumCap) const { return term_count() <= cap; }

  // One operator draw. Composed channels draw one operator per step and
  // return the ordered gate concatenation.
  Unitary sample_operator(Rng& rng) const;

  struct Enumerated {
    std::vector<double> probs;
    std::vector<Unitary> ops;
  };
  // Full term table; CapacityError if term_count() > cap.
  Enumerated enumerate_explicit(size_t cap = kDefaultEnumCap) const;

 private:
  RandomUnitaryChannel(uint32_t n, std::variant<Explicit, Depolarizing, Composed> f)
      : n_(n), form_(std::move(f)) {}

  uint32_t n_ = 0;
  std::variant<Explicit, Depolarizing, Composed> form_;
};

// Parse the JSON channel description format (see README for the schema).
// Raises ParseError (malformed JSON, with line/column), ValidationError
// (schema or constraint violations), or ArgumentError.
RandomUnitaryChannel parse_channel_spec(const std::string& text);
RandomUnitaryChannel parse_channel_spec_file(const std::string& path);

}  // namespace ruc
