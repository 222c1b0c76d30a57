#pragma once

#include <cstdint>
#include <vector>

#include "skewcheck/polymap.hpp"
#include "skewcheck/rng.hpp"

namespace skewcheck::testing {

inline SymMultiMap random_multimap(int n, int N, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat coeffs(N, MultiIndexSet::count(n, k));
  for (Eigen::Index c = 0; c < coeffs.cols(); ++c) {
    for (int r = 0; r < N; ++r) coeffs(r, c) = normal(rng);
  }
  return SymMultiMap(n, N, k, coeffs);
}

inline PolyMap random_polymap(int n, int N, int degree, std::uint64_t seed) {
  auto rng = rng_stream(seed, 0xbeef);
  std::normal_distribution<double> normal;
  Vec constant(N);
  for (int i = 0; i < N; ++i) constant[i] = normal(rng);
  std::vector<SymMultiMap> parts;
  for (int k = 1; k <= degree; ++k) parts.push_back(random_multimap(n, N, k, rng));
  return PolyMap(n, N, constant, std::move(parts));
}

// Independent derivative oracle: nested central differences
//   D^k f(a)(e_{i_1}, ..., e_{i_k}) ~ sum over sign patterns of
//   (prod s_j) f(a + h sum s_j e_{i_j}) / (2h)^k.
inline Vec fd_derivative(const PolyMap& f, const Vec& a, const std::vector<int>& idx,
                         double h) {
  const int k = static_cast<int>(idx.size());
  Vec out = Vec::Zero(f.codomain_dim());
  for (int mask = 0; mask < (1 << k); ++mask) {
    Vec x = a;
    double sign = 1.0;
    for (int j = 0; j < k; ++j) {
      const double s = (mask >> j) & 1 ? 1.0 : -1.0;
      sign *= s;
      x[idx[static_cast<std::size_t>(j)]] += s * h;
    }
    out += sign * f.eval(x);
  }
  return out / std::pow(2.0 * h, k);
}

// The n = 1 cubic curve (x, x^3/6, x^2/2).
inline PolyMap twisted_cubic() {
  Mat c1(3, 1), c2(3, 1), c3(3, 1);
  c1 << 1, 0, 0;
  c2 << 0, 0, 1;
  c3 << 0, 1, 0;
  std::vector<SymMultiMap> parts;
  parts.emplace_back(1, 3, 1, c1);
  parts.emplace_back(1, 3, 2, c2);
  parts.emplace_back(1, 3, 3, c3);
  return PolyMap(1, 3, Vec::Zero(3), std::move(parts));
}

// The planar parabola (t, t^2, 0).
inline PolyMap planar_parabola() {
  Mat c1(3, 1), c2(3, 1);
  c1 << 1, 0, 0;
  c2 << 0, 2, 0;
  std::vector<SymMultiMap> parts;
  parts.emplace_back(1, 3, 1, c1);
  parts.emplace_back(1, 3, 2, c2);
  return PolyMap(1, 3, Vec::Zero(3), std::move(parts));
}

// The curve (t, t^3, 0): parallel tangents at t = -1 and t = 1.
inline PolyMap parallel_cubic() {
  Mat c1(3, 1), c2(3, 1), c3(3, 1);
  c1 << 1, 0, 0;
  c2 << 0, 0, 0;
  c3 << 0, 6, 0;
  std::vector<SymMultiMap> parts;
  parts.emplace_back(1, 3, 1, c1);
  parts.emplace_back(1, 3, 2, c2);
  parts.emplace_back(1, 3, 3, c3);
  return PolyMap(1, 3, Vec::Zero(3), std::move(parts));
}

}  // namespace skewcheck::testing
