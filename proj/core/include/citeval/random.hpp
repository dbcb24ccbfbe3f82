#pragma once

#include <cstdint>

namespace citeval {

/// xoshiro256** (Blackman & Vigna) seeded through SplitMix64.
///
/// The algorithm is fixed so a seed reproduces the same stream on every
/// platform and in every language port:
///   - state s[0..3] = four successive SplitMix64 outputs from `seed`
///   - next(): result = rotl(s1 * 5, 7) * 9, then the standard xoshiro256 step
///   - uniform01(): (next() >> 11) * 2^-53, in [0, 1)
///   - below(n): rejection of raw draws under (2^64 - n) mod n, then mod n
///   - normal(): Box-Muller, cosine branch only, u1 = 1 - uniform01()
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  double uniform01() noexcept;
  /// Uniform integer in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;
  double normal() noexcept;

  static std::uint64_t splitmix64(std::uint64_t& state) noexcept;

private:
  std::uint64_t s_[4];
};

}  // namespace citeval
