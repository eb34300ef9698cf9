#pragma once

#include <cmath>
#include <cstdint>

namespace oscsync {

// SplitMix64: used for seeding and for deriving per-cell / per-oscillator
// sub-seeds. One fixed, documented mixing function keeps every sweep
// reproducible regardless of how the cells are scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derived seed for a work item addressed by up to two indices:
//   seed = SM(SM(SM(base) ^ (a*C1 + C2)) ^ (b*C3 + C4))
// mix_seed(base, a)    -> per-oscillator noise stream seeds
// mix_seed(base, a, b) -> per-cell seeds of a 2-D sweep
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = base;
  std::uint64_t h = splitmix64(s);
  s = h ^ (a * 0x9E3779B97F4A7C15ULL + 0x243F6A8885A308D3ULL);
  h = splitmix64(s);
  s = h ^ (b * 0xD1B54A32D192ED03ULL + 0x452821E638D01377ULL);
  return splitmix64(s);
}

// xoshiro256** by Blackman & Vigna; small, fast and bit-reproducible on
// every platform (unlike std::normal_distribution, which is
// implementation-defined).
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed = 1) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in (0, 1]; never 0 so log() below is always finite.
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Standard-normal sampler (Box-Muller, pair-cached).
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed = 1) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.uniform();
    const double u2 = rng_.uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925286766559 * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

 private:
  Xoshiro256 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// One noise sample, scaled by the amplitude. Always advances the stream,
// so toggling u_n0 does not shift the draw sequence.
inline double sample_noise(GaussianSampler& rng, double u_n0) {
  const double z = rng.next();
  return u_n0 == 0.0 ? 0.0 : u_n0 * z;
}

}  // namespace oscsync
