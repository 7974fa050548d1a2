// Timing table for the OpenMP statevector kernels against the serial
// reference implementations, plus the grouped estimator against its
// shot-at-a-time reference. Each row also cross-checks the two results.

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ruc/channel.hpp"
#include "ruc/dense_kernels.hpp"
#include "ruc/estimator.hpp"
#include "ruc/rng.hpp"

using namespace ruc;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<c64> random_state(uint32_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<c64> amp(size_t{1} << n);
  double norm = 0.0;
  for (auto& a : amp) {
    a = c64(rng.next_double() - 0.5, rng.next_double() - 0.5);
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amp) a *= scale;
  return amp;
}

void print_row(const std::string& name, uint32_t n, int reps, double serial_ms,
               double parallel_ms, double max_d) {
  std::printf("%-18s %4u %6d %12.2f %12.2f %9.2fx %10.1e\n", name.c_str(), n, reps, serial_ms,
              parallel_ms, serial_ms / parallel_ms, max_d);
}

double max_abs_diff(std::span<const c64> a, std::span<const c64> b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void bench_kernels(uint32_t n, int reps) {
  const std::array<c64, 4> h{c64(std::numbers::sqrt2 / 2), c64(std::numbers::sqrt2 / 2),
                             c64(std::numbers::sqrt2 / 2), c64(-std::numbers::sqrt2 / 2)};
  std::array<c64, 16> cx{};
  cx[0 * 4 + 0] = 1;
  cx[1 * 4 + 3] = 1;
  cx[2 * 4 + 2] = 1;
  cx[3 * 4 + 1] = 1;

  // apply_1q: sweep the target qubit so strides vary.
  {
    auto a = random_state(n, 1), b = a;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) kernels::serial::apply_1q(a, static_cast<uint32_t>(r) % n, h);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) kernels::apply_1q(b, static_cast<uint32_t>(r) % n, h);
    print_row("apply_1q", n, reps, ts, ms_since(t0), max_abs_diff(a, b));
  }

  // apply_2q on a mix of adjacent and distant pairs.
  {
    auto a = random_state(n, 2), b = a;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
      const auto q = static_cast<uint32_t>(r) % (n - 1);
      kernels::serial::apply_2q(a, q, (q + 1 + static_cast<uint32_t>(r) % (n - q - 1)) % n, cx);
    }
    const double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) {
      const auto q = static_cast<uint32_t>(r) % (n - 1);
      kernels::apply_2q(b, q, (q + 1 + static_cast<uint32_t>(r) % (n - q - 1)) % n, cx);
    }
    print_row("apply_2q", n, reps, ts, ms_since(t0), max_abs_diff(a, b));
  }

  // Pauli expectation value: the reduction kernel.
  {
    const auto a = random_state(n, 3);
    const uint64_t xmask = 0b1011, zmask = 0b0110;
    double vs = 0.0, vp = 0.0;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) vs += kernels::serial::expval_pauli_masks(a, xmask, zmask);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) vp += kernels::expval_pauli_masks(a, xmask, zmask);
    print_row("expval_pauli", n, reps, ts, ms_since(t0), std::abs(vs - vp) / reps);
  }

  {
    const auto a = random_state(n, 4);
    double vs = 0.0, vp = 0.0;
    auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) vs += kernels::serial::norm_sq(a);
    const double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < reps; ++r) vp += kernels::norm_sq(a);
    print_row("norm_sq", n, reps, ts, ms_since(t0), std::abs(vs - vp) / reps);
  }
}

void bench_estimator() {
  const auto chan = RandomUnitaryChannel::depolarizing(6, 0.5);
  const auto prep = Preparation::zero(6, Backend::Dense);
  const auto obs = PauliString::from_text("IIIZII");
  const uint64_t shots = 20000;
  EstimateOptions opts;
  opts.auto_variance = false;

  auto t0 = Clock::now();
  const auto serial = reference::estimate_serial(chan, prep, obs, shots, 77, "bench", opts);
  const double ts = ms_since(t0);
  t0 = Clock::now();
  const auto grouped = estimate(chan, prep, obs, shots, 77, "bench", opts);
  const double tp = ms_since(t0);
  std::printf("%-18s %4s %6llu %12.2f %12.2f %9.2fx %10.1e\n", "estimate", "6",
              static_cast<unsigned long long>(shots), ts, tp, ts / tp,
              std::abs(serial.mean - grouped.mean));
}

}  // namespace

int main(int argc, char** argv) {
  uint32_t n = 18;
  int reps = 8;
  if (argc > 1) n = static_cast<uint32_t>(std::stoul(argv[1]));
  if (argc > 2) reps = std::stoi(argv[2]);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-18s %4s %6s %12s %12s %10s %10s\n", "kernel", "n", "reps", "serial ms",
              "parallel ms", "speedup", "max |d|");
  bench_kernels(n, reps);
  if (n >= 4) bench_kernels(n - 4, reps * 4);
  bench_estimator();
  return 0;
}
