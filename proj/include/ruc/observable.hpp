#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "ruc/errors.hpp"
#include "ruc/pauli.hpp"

namespace ruc {

// Hermitian observable as a real combination of Pauli strings.
struct Observable {
  std::vector<std::pair<double, PauliString>> terms;

  Observable() = default;
  explicit Observable(PauliString p, double coeff = 1.0) { add(coeff, std::move(p)); }

  Observable& add(double coeff, PauliString p) {
    if (!terms.empty() && p.num_qubits() != num_qubits()) {
      throw DimensionError("observable terms act on different qubit counts");
    }
    terms.emplace_back(coeff, std::move(p));
    return *this;
  }

  uint32_t num_qubits() const {
    if (terms.empty()) throw ArgumentError("observable has no terms");
    return terms.front().second.num_qubits();
  }

  // sum_k |c_k|, an upper bound on the operator norm.
  double one_norm() const {
    double s = 0.0;
    for (const auto& [c, p] : terms) s += std::abs(c);
    return s;
  }
};

}  // namespace ruc
