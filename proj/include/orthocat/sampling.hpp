#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "orthocat/types.hpp"

// Deterministic sampling helpers for sweeps and self-tests.  Uniform deviates
// are derived from the raw 64-bit stream directly so the same seed produces
// the same samples on every platform; std::uniform_real_distribution is
// implementation-defined and would not.

namespace orthocat {

class sample_stream {
 public:
  explicit sample_stream(std::uint64_t seed) : m_rng(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(m_rng() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform over the disc |z| <= radius.
  std::complex<double> disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Uniform over the annulus r_min <= |z| <= r_max.
  std::complex<double> annulus(double r_min, double r_max) {
    const double a = r_min * r_min;
    const double b = r_max * r_max;
    const double r = std::sqrt(a + (b - a) * uniform());
    const double t = 2.0 * std::numbers::pi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  std::uint64_t bits() { return m_rng(); }

 private:
  std::mt19937_64 m_rng;
};

}  // namespace orthocat
