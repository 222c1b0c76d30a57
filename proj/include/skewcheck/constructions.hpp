#pragma once

#include <cstdint>
#include <string>

#include "skewcheck/polymap.hpp"

namespace skewcheck {

// Symmetric bilinear convolution map R^n x R^n -> R^{2n}:
// component 0 is 0; component k (1 <= k <= 2n-1) is sum_{i+j=k-1} x_i y_j.
// Nonsingular: B(x, y) = 0 forces x = 0 or y = 0.
SymMultiMap conv_bilinear(int n);

// Symmetric trilinear diagonal map R^n^3 -> R^{2n}: component i is
// x_i y_i z_i for i < n, zero above.
SymMultiMap diag_trilinear(int n);

// The cubic map R^n -> R^{3n},  x -> (x, B(x,x)/2 + C(x,x,x)/6), stored so
// that its k-th derivative at 0 is exactly (v,0), (0,B), (0,C).
PolyMap skew_cubic(int n);

struct ConvCheckReport {
  bool pass = false;
  std::string mode;
  int trials = 0;
  double min_norm = 0.0;  // sampled mode: min ||B(x,y)|| over unit pairs
};

// Nonsingularity check for conv_bilinear. "exact" replays the lowest-index
// argument (component i0+j0+1 equals x_{i0} y_{j0} bit-exactly); "sampled"
// minimizes ||B(x,y)|| over random unit pairs.
ConvCheckReport conv_nonsingular_check(int n, const std::string& mode, int trials = 100000,
                                       std::uint64_t seed = 12345);

struct TriangularResult {
  bool forced_zero = false;
  int contradiction_index = -1;  // first index where y violates the forced value
};

// Forward substitution for B(x, y) + lambda C(y,y,y) = 0 with lambda != 0:
// component k reads sum_{i+j=k-1} x_i y_j + lambda y_k^3 and forces y_k = 0
// given y_{<k} = 0. Reports "zero" when the given y follows the forced
// pattern, else the first violating index. Component tests are exact.
TriangularResult triangular_oracle(const Vec& x, double lambda, const Vec& y);

// Symmetric bilinear map R^n x R^n -> R^{2n} with basis images
// e_i x e_j -> e'_{i+j} (1-based, i <= j) except the (1, n) pair, which maps
// to zero. Internally 0-based: (p, q) -> output p+q+1 except (0, n-1).
SymMultiMap appendix_bilinear(int n);

// The cubic map R^n -> R^N (N >= 3n) whose derivatives at 0 are
// L(x) = (x,0,0), B = (0, appendix_bilinear, 0), T = (0, diag_trilinear, 0);
// fails the third-order condition exactly at y = e_1 with kernel (0, e_n, 0)
// (1-based indices).
PolyMap appendix_triple(int n, int N);

// Embed a map into R^{2n} as the rows [n, 3n) of a codomain R^N block.
SymMultiMap embed_middle_block(const SymMultiMap& m, int n, int N);

}  // namespace skewcheck
