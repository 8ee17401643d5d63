#pragma once

// Seeded randomness shared by the generators in this library. Draws are
// built directly from mt19937_64 output so streams are reproducible across
// standard library implementations.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace pdcone::detail {

enum class Stream : std::uint64_t { Unitary = 1, Spectrum = 2, Hermitian = 3, Vector = 4, Uniform = 5 };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream)
      : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)))) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Box-Muller, both variates folded into one complex draw with E|z|^2 = 1.
  std::complex<double> complex_normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pdcone::detail
