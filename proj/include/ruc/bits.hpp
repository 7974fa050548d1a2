#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruc/errors.hpp"

namespace ruc {

// Little-endian bit vector: bit j is the value of qubit j. The text form
// lists qubit 0 leftmost, e.g. |1>@q0 (x) |0>@q1 is "10".
class BitString {
 public:
  BitString() = default;
  explicit BitString(uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitString from_text(std::string_view s) {
    BitString b(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        b.set(i, true);
      } else if (s[i] != '0') {
        throw ArgumentError("bitstring text must contain only '0'/'1'");
      }
    }
    return b;
  }

  uint32_t size() const { return n_; }

  bool get(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void set(uint32_t i, bool v) {
    const uint64_t m = uint64_t{1} << (i & 63);
    if (v) {
      w_[i >> 6] |= m;
    } else {
      w_[i >> 6] &= ~m;
    }
  }

  void flip(uint32_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

  uint32_t weight() const {
    uint32_t c = 0;
    for (uint64_t w : w_) c += static_cast<uint32_t>(std::popcount(w));
    return c;
  }

  // Index of the basis state, valid for n <= 63.
  uint64_t to_index() const {
    if (n_ > 63) throw CapacityError("bitstring too wide for an integer index");
    return w_.empty() ? 0 : w_[0];
  }

  std::string text() const {
    std::string s(n_, '0');
    for (uint32_t i = 0; i < n_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const uint64_t> words() const { return w_; }
  std::span<uint64_t> words() { return w_; }

  bool operator==(const BitString&) const = default;

 private:
  uint32_t n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace ruc
