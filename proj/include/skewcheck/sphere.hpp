#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "skewcheck/types.hpp"

namespace skewcheck {

// Sample set on S^{n-1}: a deterministic quasi-uniform half (equal angles for
// n=2, Fibonacci spiral for n=3), the 2n signed axis directions, and
// counter-seeded random points for the rest.
std::vector<Vec> sphere_samples(int n, int count, std::uint64_t seed);

// Orthonormal basis of the tangent space at unit y, as an n x (n-1) matrix.
Mat tangent_basis(const Vec& y);

struct SphereMinOptions {
  int samples_per_dim = 2048;
  int starts = 8;
  int descent_steps = 200;
  std::uint64_t seed = 12345;
  int threads = 0;
};

struct SphereMinResult {
  double min_value = 0.0;
  Vec argmin;
  std::size_t evaluations = 0;
};

// Global-ish minimization of a continuous value over the unit sphere:
// sampling scan, projected finite-difference descent on value^2 from the
// best starts, then cyclic great-circle line-search polish. The returned
// minimum is the best evaluated value (an upper bound of the true minimum).
SphereMinResult minimize_on_sphere(int n, const std::function<double(const Vec&)>& value,
                                   const SphereMinOptions& opts = {});

struct NetScanResult {
  double min_value = 0.0;
  Vec argmin;
  double mesh = 0.0;       // certified geodesic covering radius (with safety)
  std::size_t points = 0;  // number of evaluations
};

struct NetBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluate `value` on a delta-net of S^{n-1} (n <= 4) and return the net
// minimum together with the certified covering radius. Streaming; throws
// NetBudgetError when the required net exceeds `budget` points.
NetScanResult scan_sphere_net(int n, double delta, std::size_t budget,
                              const std::function<double(const Vec&)>& value, int threads);

}  // namespace skewcheck
