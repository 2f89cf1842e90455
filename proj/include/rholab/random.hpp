#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rholab/space.hpp"

namespace rholab {

// Seeded draws with fully specified output. mt19937_64 is bit-exact by the
// standard; the distribution helpers below avoid std::uniform_*_distribution
// on purpose, because those are implementation-defined and would make golden
// files compiler-dependent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in {0, 1, ..., n-1} via rejection, n >= 1.
  int uniform_int(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return static_cast<int>(draw % bound);
  }

  double angle() { return uniform(0.0, 2.0 * M_PI); }

  Complex unit() {
    const double t = angle();
    return Complex(std::cos(t), std::sin(t));
  }

  // Uniform over the disk of the given radius (area-uniform).
  Complex complex_in_disk(double radius) {
    const double r = radius * std::sqrt(uniform01());
    return r * unit();
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rholab
