#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hdad {

// Deterministic random source. Draws go through fixed arithmetic on the
// mt19937_64 output stream (never through std:: distribution objects, whose
// algorithms vary between standard libraries), so identical seeds yield
// identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Modulo bias is negligible for the small n used
  // here and keeps the draw count per call fixed at one.
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

  // Standard normal via Box-Muller (both uniforms always consumed).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hdad
