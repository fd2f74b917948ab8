#pragma once

// Seeded sampling. std::uniform_real_distribution is implementation-defined,
// so uniforms are built directly from the 64-bit engine output to keep
// sampled values identical across standard libraries.

#include <cstdint>
#include <random>

namespace ckspace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform magnitude in [lo, hi] with a random sign.
  double signed_uniform(double lo, double hi) {
    const double v = uniform(lo, hi);
    return (eng_() & 1U) ? -v : v;
  }
  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ckspace
