#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace olre {

// Deterministic random source. The engine (mt19937_64) is fully specified by
// the standard and all transforms below are implemented here, so a seed pins
// the generated stream bit-for-bit across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in the open interval (0, 1); safe to pass to log().
  double uniform_open01() {
    return (static_cast<double>(gen_() >> 12) + 0.5) * 0x1.0p-52;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller pair of independent standard normals.
  void normal2(double& z0, double& z1) {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    z0 = r * std::cos(phi);
    z1 = r * std::sin(phi);
  }

  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Laplace(0, scale) by inverse CDF.
  double laplace(double scale) {
    const double w = uniform_open01() - 0.5;
    const double mag = std::log1p(-2.0 * std::abs(w));
    return w < 0.0 ? scale * mag : -scale * mag;
  }

  // Uniform integer in [0, n) by rejection; unbiased for every n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_int: n must be >= 1");
    const std::uint64_t max64 = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max64 % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = gen_();
      if (rem == 0 || r < max64 - rem + 1) return r % n;
    }
  }

 private:
  std::mt19937_64 gen_;
};

// Seed for an auxiliary stream derived from a base seed (splitmix64 step).
// Used where a second independent stream is needed, e.g. the random basis
// selection of a trial, without disturbing the documented base-seed layout.
inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace olre
