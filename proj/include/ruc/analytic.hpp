#pragma once

#include <cstdint>
#include <vector>

#include "ruc/density.hpp"
#include "ruc/observable.hpp"

namespace ruc {

// lambda = p * 4^n / (4^n - 1), the mixing weight in
// rho -> (1 - lambda) rho + lambda I / 2^n. Computed as p / (1 - 4^-n) so no
// 4^n is ever materialized.
double depolarizing_lambda(uint32_t n, double p);

// (1 - lambda) Tr[O rho] + (lambda / 2^n) Tr[O].
double depolarized_expectation(double tr_o_rho, double tr_o, uint32_t n, double p);
double depolarized_expectation(const Observable& o, const DensityMatrix& rho, double p);

// P(weight = k) for n independent Bernoulli(q) flips.
std::vector<double> binomial_pmf(uint32_t n, double q);

// Measured Hamming-weight law for depolarized |0^n> with independent readout
// flips: (1 - lambda) Binom(n, p_flip) + lambda Binom(n, 1/2). Flips leave
// the uniform branch uniform.
std::vector<double> hamming_distribution(uint32_t n, double p, double p_flip);

// 0.5 * sum_i |a_i - b_i|
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ruc
