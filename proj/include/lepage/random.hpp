#ifndef LEPAGE_RANDOM_HPP
#define LEPAGE_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace lepage {

/// SplitMix64 step. Used for seeding and substream derivation only.
constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** 64-bit generator (Blackman & Vigna).
///
/// Satisfies UniformRandomBitGenerator, so it can drive the standard
/// distributions as well. Substreams for parallel batches are derived from
/// a (seed, stream index) pair through SplitMix64, so the stream assigned
/// to a chunk of rows never depends on which thread draws it.
class RandomStream {
public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0) noexcept { reseed(seed); }

  /// Independent stream number `index` under master seed `seed`.
  static RandomStream substream(std::uint64_t seed,
                                std::uint64_t index) noexcept {
    std::uint64_t mix = seed;
    const std::uint64_t a = splitmix64(mix);
    std::uint64_t idx = index ^ 0x6a09e667f3bcc909ULL;
    const std::uint64_t b = splitmix64(idx);
    RandomStream s;
    s.reseed(a ^ (b * 0xff51afd7ed558ccdULL) ^ (b >> 29));
    return s;
  }

  void reseed(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto &w : state_)
      w = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1]: never returns 0, so -log(u) and u^(-1/a) are finite.
  double uniform_open0() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Standard exponential by inversion.
  double exponential() noexcept { return -std::log(uniform_open0()); }

  friend bool operator==(const RandomStream &,
                         const RandomStream &) = default;

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

} // namespace lepage

#endif // LEPAGE_RANDOM_HPP
