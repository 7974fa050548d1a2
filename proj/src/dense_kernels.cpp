#include "ruc/dense_kernels.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace ruc::kernels {

namespace {

constexpr size_t kReduceBlock = 4096;
// Below this size the parallel entry points fall through to the serial
// bodies; the dispatch depends only on the state size, never on the worker
// count, so results stay bit-identical either way.
constexpr size_t kParallelThreshold = size_t{1} << 12;

inline size_t insert_zero_bit(size_t i, uint32_t pos) {
  const size_t low = i & ((size_t{1} << pos) - 1);
  return ((i >> pos) << (pos + 1)) | low;
}

inline c64 ipow(unsigned pow) {
  switch (pow & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Pauli phase on basis state b: i^{popcount(x&z)} (-1)^{popcount(z&b)}.
inline c64 pauli_phase(uint64_t xmask, uint64_t zmask, uint64_t b) {
  const unsigned pow =
      (std::popcount(xmask & zmask) + 2 * std::popcount(zmask & b)) & 3;
  return ipow(pow);
}

// Sums term(i) for i in [0, count) via fixed-size blocks; the block partials
// are combined in index order so the result is independent of thread count.
template <typename Term>
double blocked_sum(size_t count, Term&& term) {
  const size_t nblocks = (count + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t blk = 0; blk < static_cast<int64_t>(nblocks); ++blk) {
    const size_t lo = static_cast<size_t>(blk) * kReduceBlock;
    const size_t hi = std::min(lo + kReduceBlock, count);
    double acc = 0.0;
    for (size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<size_t>(blk)] = acc;
  }
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

}  // namespace

void apply_1q(std::span<c64> amp, uint32_t q, const std::array<c64, 4>& m) {
  if (amp.size() < kParallelThreshold) return serial::apply_1q(amp, q, m);
  const size_t half = amp.size() >> 1;
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < static_cast<int64_t>(half); ++i) {
    const size_t i0 = insert_zero_bit(static_cast<size_t>(i), q);
    const size_t i1 = i0 | (size_t{1} << q);
    const c64 a0 = amp[i0], a1 = amp[i1];
    amp[i0] = m[0] * a0 + m[1] * a1;
    amp[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(std::span<c64> amp, uint32_t qa, uint32_t qb, const std::array<c64, 16>& m) {
  if (amp.size() < kParallelThreshold) return serial::apply_2q(amp, qa, qb, m);
  const uint32_t lo = std::min(qa, qb), hi = std::max(qa, qb);
  const size_t quarter = amp.size() >> 2;
  const size_t ma = size_t{1} << qa, mb = size_t{1} << qb;
#pragma omp parallel for schedule(static)
  for (int64_t g = 0; g < static_cast<int64_t>(quarter); ++g) {
    const size_t base = insert_zero_bit(insert_zero_bit(static_cast<size_t>(g), lo), hi);
    const size_t idx[4] = {base, base | ma, base | mb, base | ma | mb};
    c64 in[4];
    for (int l = 0; l < 4; ++l) in[l] = amp[idx[l]];
    for (int out = 0; out < 4; ++out) {
      c64 acc = 0.0;
      for (int l = 0; l < 4; ++l) acc += m[out * 4 + l] * in[l];
      amp[idx[out]] = acc;
    }
  }
}

void apply_kq(std::span<c64> amp, std::span<const uint32_t> qs, std::span<const c64> m) {
  const uint32_t k = static_cast<uint32_t>(qs.size());
  if (k == 0 || k > 3) throw ArgumentError("dense operator supports 1 to 3 qubits");
  const uint32_t dim = 1u << k;
  if (m.size() != size_t{dim} * dim) throw DimensionError("dense operator matrix size mismatch");

  std::array<uint32_t, 3> sorted{};
  std::copy(qs.begin(), qs.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + k);

  const size_t groups = amp.size() >> k;
#pragma omp parallel for schedule(static) if (groups >= kParallelThreshold)
  for (int64_t g = 0; g < static_cast<int64_t>(groups); ++g) {
    size_t base = static_cast<size_t>(g);
    for (uint32_t i = 0; i < k; ++i) base = insert_zero_bit(base, sorted[i]);
    size_t idx[8];
    c64 in[8];
    for (uint32_t l = 0; l < dim; ++l) {
      size_t off = base;
      for (uint32_t i = 0; i < k; ++i) {
        if ((l >> i) & 1) off |= size_t{1} << qs[i];
      }
      idx[l] = off;
      in[l] = amp[off];
    }
    for (uint32_t out = 0; out < dim; ++out) {
      c64 acc = 0.0;
      for (uint32_t l = 0; l < dim; ++l) acc += m[size_t{out} * dim + l] * in[l];
      amp[idx[out]] = acc;
    }
  }
}

void apply_pauli_masks(std::span<c64> amp, uint64_t xmask, uint64_t zmask) {
  const size_t dim = amp.size();
  if (xmask == 0) {
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
    for (int64_t b = 0; b < static_cast<int64_t>(dim); ++b) {
      amp[b] *= pauli_phase(0, zmask, static_cast<uint64_t>(b));
    }
    return;
  }
#pragma omp parallel for schedule(static) if (dim >= kParallelThreshold)
  for (int64_t b = 0; b < static_cast<int64_t>(dim); ++b) {
    const uint64_t c = static_cast<uint64_t>(b) ^ xmask;
    if (static_cast<uint64_t>(b) > c) continue;  // visit each pair once
    const c64 vb = amp[b], vc = amp[c];
    amp[c] = pauli_phase(xmask, zmask, static_cast<uint64_t>(b)) * vb;
    amp[b] = pauli_phase(xmask, zmask, c) * vc;
  }
}

double expval_pauli_masks(std::span<const c64> amp, uint64_t xmask, uint64_t zmask) {
  if (amp.size() <= kReduceBlock) return serial::expval_pauli_masks(amp, xmask, zmask);
  return blocked_sum(amp.size(), [&](size_t b) {
    const c64 contrib =
        std::conj(amp[b ^ xmask]) * pauli_phase(xmask, zmask, b) * amp[b];
    return contrib.real();
  });
}

double norm_sq(std::span<const c64> amp) {
  if (amp.size() <= kReduceBlock) return serial::norm_sq(amp);
  return blocked_sum(amp.size(), [&](size_t i) { return std::norm(amp[i]); });
}

namespace serial {

void apply_1q(std::span<c64> amp, uint32_t q, const std::array<c64, 4>& m) {
  const size_t half = amp.size() >> 1;
  for (size_t i = 0; i < half; ++i) {
    const size_t i0 = insert_zero_bit(i, q);
    const size_t i1 = i0 | (size_t{1} << q);
    const c64 a0 = amp[i0], a1 = amp[i1];
    amp[i0] = m[0] * a0 + m[1] * a1;
    amp[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_2q(std::span<c64> amp, uint32_t qa, uint32_t qb, const std::array<c64, 16>& m) {
  const uint32_t lo = std::min(qa, qb), hi = std::max(qa, qb);
  const size_t quarter = amp.size() >> 2;
  const size_t ma = size_t{1} << qa, mb = size_t{1} << qb;
  for (size_t g = 0; g < quarter; ++g) {
    const size_t base = insert_zero_bit(insert_zero_bit(g, lo), hi);
    const size_t idx[4] = {base, base | ma, base | mb, base | ma | mb};
    c64 in[4];
    for (int l = 0; l < 4; ++l) in[l] = amp[idx[l]];
    for (int out = 0; out < 4; ++out) {
      c64 acc = 0.0;
      for (int l = 0; l < 4; ++l) acc += m[out * 4 + l] * in[l];
      amp[idx[out]] = acc;
    }
  }
}

double expval_pauli_masks(std::span<const c64> amp, uint64_t xmask, uint64_t zmask) {
  double acc = 0.0;
  for (size_t b = 0; b < amp.size(); ++b) {
    acc += (std::conj(amp[b ^ xmask]) * pauli_phase(xmask, zmask, b) * amp[b]).real();
  }
  return acc;
}

double norm_sq(std::span<const c64> amp) {
  double acc = 0.0;
  for (const c64& a : amp) acc += std::norm(a);
  return acc;
}

}  // namespace serial

}  // namespace ruc::kernels
