#pragma once

#include <cstdint>
#include <string_view>

namespace ruc {

// SplitMix64 finalizer; bijective avalanche mix.
inline constexpr uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Small deterministic PRNG (SplitMix64 sequence). Used instead of the
// <random> engines so that streams can be derived counter-style from
// (seed, tag, lane, index) and results are identical across platforms
// and thread counts.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); unbiased via rejection. bound >= 1.
  uint64_t next_below(uint64_t bound) {
    const uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  uint64_t state_;
};

// FNV-1a over the tag text; tags name an experiment point, e.g. "depol:n=7:obs=ZII".
inline constexpr uint64_t hash_tag(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent substream as a pure function of (master seed, tag, lane, index).
// Shot i of an experiment draws only from its own substreams, which makes
// results independent of scheduling and worker count.
inline Rng substream(uint64_t seed, uint64_t tag_hash, uint64_t lane, uint64_t index) {
  uint64_t s = mix64(seed ^ 0xa0761d6478bd642fULL);
  s = mix64(s + 0x9e3779b97f4a7c15ULL * tag_hash);
  s = mix64(s + 0x9e3779b97f4a7c15ULL * (lane + 1));
  s = mix64(s + 0x9e3779b97f4a7c15ULL * (index + 1));
  return Rng(s);
}

// Substream lanes; one per independent random decision within a shot.
enum RngLane : uint64_t {
  kLaneDraw = 1,     // operator draw from the channel
  kLaneOutcome = 2,  // measurement outcome / readout flips
  kLaneAlloc = 3,    // free-running allocation streams
};

}  // namespace ruc
