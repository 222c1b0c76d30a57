#pragma once

#include <cstdint>
#include <utility>

#include "skewcheck/polymap.hpp"
#include "skewcheck/types.hpp"

namespace skewcheck {

// A point of the spherical blow-up R^n x S^{n-1} x R_{>=0} of the pair-space
// diagonal: base point a, unit direction y, separation t.
struct BlowupPoint {
  Vec a;
  Vec y;
  double t = 0.0;

  BlowupPoint(Vec a_, Vec y_, double t_);
};

// (a, y, t) -> (a, a + t y).
std::pair<Vec, Vec> blowup_to_pair(const BlowupPoint& bp);

// The modified N x (2n+1) pair matrix on the blow-up: for t > 0 the
// difference-quotient columns
//   [ Df_a | (Df_{a+ty} - Df_a)/t | (6(Df_{a+ty}(ty) + Df_a(ty)) - 12(f(a+ty) - f(a)))/t^3 ]
// evaluated through their exact polynomial expansion (the same values,
// stable for small t); for t = 0 the boundary columns
//   [ Df_a | D^2 f_a(y, .) | D^3 f_a(y, y, y) ].
Mat blowup_matrix(const PolyMap& f, const BlowupPoint& bp);

// The invertible (2n+1) x (2n+1) change of basis relating the raw pair
// matrix at (a, a+ty) to the blow-up matrix: blowup = pair * basis.
// Determinant -12 / t^{n+3}. Requires t > 0.
Mat pair_to_blowup_basis(const Vec& y, double t);
MatT<long double> pair_to_blowup_basis_ld(const Vec& y, double t);

// Independent route for the t > 0 blow-up matrix: assemble the raw pair
// matrix at (a, a+ty) and multiply by the change of basis, all in extended
// precision. Used to cross-check blowup_matrix.
Mat blowup_matrix_via_pair(const PolyMap& f, const BlowupPoint& bp);

struct RemainderScalingReport {
  bool pass = false;
  bool zero_remainder = false;  // remainder vanishes identically at this order
  double min_slope = 0.0;       // log-log slope of ||R||/||x||^k vs t, per trial
  double max_slope = 0.0;
  double max_linear_factor = 0.0;  // spread of ratio/t across the t grid
  int trials = 0;
};

// Checks that ||R(a, t y)|| / t^k decays linearly in t over
// t in {1e-1, ..., 1e-6}: slope within [0.9, 1.1] and ratio/t constant
// within a factor of 10, for `trials` random unit directions y.
RemainderScalingReport remainder_scaling_check(const PolyMap& f, const Vec& a, int k,
                                               int trials, std::uint64_t seed = 12345);

}  // namespace skewcheck
