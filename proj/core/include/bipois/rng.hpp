#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bipois {

/// Seeded, splittable pseudo-random generator (xoshiro256++ seeded through
/// splitmix64). Every stochastic operation in this library takes one of
/// these explicitly; there is no global generator. Independent streams for
/// parallel work are obtained with Rng(master_seed, stream_index), which is
/// how batch simulators seed one generator per trajectory.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept { seed_state(seed, 0); }

  Rng(std::uint64_t master_seed, std::uint64_t stream) noexcept {
    seed_state(master_seed, stream);
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1], for logarithms.
  double uniform01_open_left() noexcept { return 1.0 - uniform01(); }

  /// Exponential(rate) by inverse CDF.
  double exponential(double rate) noexcept {
    return -std::log(uniform01_open_left()) / rate;
  }

  /// Standard normal via the Marsaglia polar method (second value cached).
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  void seed_state(std::uint64_t seed, std::uint64_t stream) noexcept {
    // Decorrelate streams before expanding; splitmix64 never yields four
    // zero outputs in a row, so the xoshiro state is always valid.
    std::uint64_t x = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bipois
