#pragma once

#include <cstdint>

namespace hnp {

/// SplitMix64 finaliser. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th draw of a stream is a pure function of
/// (key, i), so any chunking of an index range reproduces the serial result
/// bit for bit. The algorithm is part of the output contract; changing it
/// changes every seeded estimate.
///
///   key(seed)         = mix64(seed)
///   substream(key, s) = mix64(key ^ mix64(s + 0xA5A5A5A5))
///   bits(key, i)      = mix64(mix64(i) ^ key)
///   uniform(key, i)   = (bits >> 11) * 2^-53        in [0, 1)
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed) noexcept : key_(mix64(seed)) {}

  [[nodiscard]] constexpr CounterRng substream(std::uint64_t id) const noexcept {
    CounterRng child(0);
    child.key_ = mix64(key_ ^ mix64(id + 0xA5A5A5A5ULL));
    return child;
  }

  [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(mix64(counter) ^ key_);
  }

  [[nodiscard]] constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace hnp
