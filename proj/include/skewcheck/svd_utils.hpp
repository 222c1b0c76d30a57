#pragma once

#include "skewcheck/types.hpp"

namespace skewcheck {

// Singular-value diagnostics of A as a linear map. For a wide matrix
// (cols > rows) the map has a nontrivial kernel; sigma_min is then the
// residual ||A v|| of the trailing full-V column rather than the smallest
// computed singular value of the matrix.
struct SigmaInfo {
  double sigma_max = 0.0;
  double sigma_min = 0.0;     // smallest singular value of the *map*
  Vec min_right_singular;     // unit vector achieving sigma_min
  Vec singular_values;        // the min(rows, cols) matrix singular values
};

SigmaInfo sigma_info(const Mat& a);

// Smallest map singular value only (no singular vectors); cheaper inner-loop
// variant of sigma_info.
double sigma_min_only(const Mat& a);

// Numerical rank: count of singular values > rel_tol * sigma_max.
int numerical_rank(const Mat& a, double rel_tol);

}  // namespace skewcheck
