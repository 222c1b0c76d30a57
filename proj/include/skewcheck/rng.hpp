#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "skewcheck/types.hpp"

namespace skewcheck {

// Deterministic per-counter RNG stream derived from a root seed. Parallel
// loops draw stream(seed, trial_index) so results do not depend on the
// execution order of trials.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t counter) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
  return std::mt19937_64(seq);
}

inline Vec gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> normal;
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

inline Vec random_unit_vector(std::mt19937_64& rng, int n) {
  while (true) {
    Vec v = gaussian_vector(rng, n);
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

// Uniform point in the ball B_r(center): normalized Gaussian direction
// scaled by r * u^{1/n}.
inline Vec random_in_ball(std::mt19937_64& rng, const Vec& center, double r) {
  const int n = static_cast<int>(center.size());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const Vec dir = random_unit_vector(rng, n);
  const double radius = r * std::pow(uniform(rng), 1.0 / n);
  return center + radius * dir;
}

}  // namespace skewcheck
