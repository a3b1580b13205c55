#pragma once

#include <cstdint>

namespace volconf {

/// Counter-based generator built on the SplitMix64 finalizer. A draw is a pure
/// function of (seed, stream, index), so any day of any sequence can be
/// regenerated independently and the output is identical on every platform.
class StreamRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  StreamRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed + kGolden * (stream + 1))) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t index) const { return mix(key_ + kGolden * (index + 1)); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) by multiply-shift; bias is below bound / 2^64.
  std::uint64_t below(std::uint64_t index, std::uint64_t bound) const {
    const unsigned __int128 wide = static_cast<unsigned __int128>(bits(index)) * bound;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Fair sign, +1 or -1.
  double sign(std::uint64_t index) const { return (bits(index) >> 63) != 0 ? 1.0 : -1.0; }

 private:
  std::uint64_t key_;
};

// Stream identifiers keep the draws of different generators independent.
enum class RngStream : std::uint64_t {
  Phased = 1,
  Dk = 2,
  Sign = 3,
  Permutation = 4,
};

inline StreamRng make_rng(std::uint64_t seed, RngStream stream) {
  return StreamRng(seed, static_cast<std::uint64_t>(stream));
}

}  // namespace volconf
