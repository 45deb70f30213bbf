#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace pblab {

/// Seeded generator whose output is identical across standard libraries
/// (std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  /// Uniform in the closed Euclidean disk |z| <= radius.
  std::complex<double> in_disk(double radius) {
    const double rho = radius * std::sqrt(uniform());
    const double t = uniform(-3.14159265358979323846, 3.14159265358979323846);
    return std::polar(rho, t);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pblab
