#pragma once

#include <cstdint>

#include "skewcheck/sym_multimap.hpp"

namespace skewcheck {

struct NormEstimateOptions {
  int samples = 4096;
  int refine_iterations = 100;
  double safety = 1.25;
  std::uint64_t seed = 0x5e3a11afULL;
};

// One-sided (over-)estimate of the operator norm
//   sup { ||m(x_1, ..., x_k)|| : all x_i unit }.
// For a symmetric multilinear map the supremum is attained on the diagonal,
// so we sample random unit diagonals, refine the best via normalized
// gradient-direction iteration, and multiply by a safety factor.
double operator_norm_estimate(const SymMultiMap& m, const NormEstimateOptions& opts = {});

}  // namespace skewcheck
