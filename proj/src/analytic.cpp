#include "ruc/analytic.hpp"

#include <cmath>

#include "ruc/errors.hpp"

namespace ruc {

double depolarizing_lambda(uint32_t n, double p) {
  if (n == 0) throw ArgumentError("need at least one qubit");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing strength must lie in [0, 1]");
  return p / (1.0 - std::ldexp(1.0, -2 * static_cast<int>(n)));
}

double depolarized_expectation(double tr_o_rho, double tr_o, uint32_t n, double p) {
  const double lambda = depolarizing_lambda(n, p);
  return (1.0 - lambda) * tr_o_rho + lambda * std::ldexp(tr_o, -static_cast<int>(n));
}

double depolarized_expectation(const Observable& o, const DensityMatrix& rho, double p) {
  const uint32_t n = o.num_qubits();
  double tr_o = 0.0;
  for (const auto& [coeff, term] : o.terms) {
    if (term.is_identity()) tr_o += coeff * std::ldexp(1.0, static_cast<int>(n));
  }
  return depolarized_expectation(rho.expectation(o), tr_o, n, p);
}

std::vector<double> binomial_pmf(uint32_t n, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("flip probability must lie in [0, 1]");
  std::vector<double> pmf(n + 1);
  // Iterate C(n,k) q^k (1-q)^(n-k) via the ratio recurrence; exact at q=0,1.
  if (q == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (q == 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  double term = std::pow(1.0 - q, n);
  const double ratio = q / (1.0 - q);
  for (uint32_t k = 0; k <= n; ++k) {
    pmf[k] = term;
    if (k < n) term *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return pmf;
}

std::vector<double> hamming_distribution(uint32_t n, double p, double p_flip) {
  const double lambda = depolarizing_lambda(n, p);
  const std::vector<double> flips = binomial_pmf(n, p_flip);
  const std::vector<double> uniform = binomial_pmf(n, 0.5);
  std::vector<double> out(n + 1);
  for (uint32_t k = 0; k <= n; ++k) {
    out[k] = (1.0 - lambda) * flips[k] + lambda * uniform[k];
  }
  return out;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("distributions have different support sizes");
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

}  // namespace ruc
