#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "ruc/gates.hpp"

namespace ruc::kernels {

// Statevector kernels. The default entry points run OpenMP-parallel loops;
// the serial namespace keeps naive single-pass implementations as the
// reference the parallel ones are tested (and benchmarked) against.
//
// Determinism: gate kernels are pure element maps, so their results do not
// depend on scheduling. Reductions (norm / expectation) sum fixed-size blocks
// and combine the partial sums in index order, which makes them bit-identical
// for every worker count.

// Apply a 2x2 matrix m (row-major) to qubit q.
void apply_1q(std::span<c64> amp, uint32_t q, const std::array<c64, 4>& m);

// Apply a 4x4 matrix m (row-major; local bit 0 = qa, bit 1 = qb).
void apply_2q(std::span<c64> amp, uint32_t qa, uint32_t qb, const std::array<c64, 16>& m);

// Apply a 2^k x 2^k matrix (row-major; local bit i = qs[i]) for k <= 3.
void apply_kq(std::span<c64> amp, std::span<const uint32_t> qs, std::span<const c64> m);

// Apply the phase/permutation action of a Pauli with the given x/z masks:
// |b> -> i^{popcount(x&z)} (-1)^{z.b} |b^x>.
void apply_pauli_masks(std::span<c64> amp, uint64_t xmask, uint64_t zmask);

// <psi| P |psi> for the Pauli with the given masks; exactly real for the
// Hermitian convention used here, so the real part is returned.
double expval_pauli_masks(std::span<const c64> amp, uint64_t xmask, uint64_t zmask);

double norm_sq(std::span<const c64> amp);

namespace serial {
void apply_1q(std::span<c64> amp, uint32_t q, const std::array<c64, 4>& m);
void apply_2q(std::span<c64> amp, uint32_t qa, uint32_t qb, const std::array<c64, 16>& m);
double expval_pauli_masks(std::span<const c64> amp, uint64_t xmask, uint64_t zmask);
double norm_sq(std::span<const c64> amp);
}  // namespace serial

}  // namespace ruc::kernels
