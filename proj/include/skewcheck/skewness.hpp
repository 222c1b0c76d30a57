#pragma once

#include <cstdint>
#include <string>

#include "skewcheck/polymap.hpp"
#include "skewcheck/svd_utils.hpp"
#include "skewcheck/types.hpp"

namespace skewcheck {

// The N x (2n+1) matrix [ Df_p | Df_q | f(q) - f(p) ] acting on
// (v1, v2, lambda), with singular-value diagnostics.
struct PairMatrix {
  Vec p;
  Vec q;
  Mat m;
  SigmaInfo sigma;
};

PairMatrix pair_matrix(const PolyMap& f, const Vec& p, const Vec& q);

// Extended-precision assembly (difference column evaluated without
// cancellation); used by the blow-up cross-checks, where the second point
// must stay unrounded.
MatT<long double> pair_matrix_ld(const PolyMap& f, const VecT<long double>& p,
                                 const VecT<long double>& q);
MatT<long double> pair_matrix_ld(const PolyMap& f, const Vec& p, const Vec& q);

struct PairSkewResult {
  bool skew = false;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::string reason;  // non-empty for structural outcomes (N < 2n+1)
};

// Tangent spaces at f(p), f(q) are totally skew iff the pair matrix has full
// column rank: sigma_min > tol * sigma_max.
PairSkewResult is_pair_skew(const PolyMap& f, const Vec& p, const Vec& q, double tol = 1e-9);

enum class FailureKind { None, Parallel, Intersecting };

const char* failure_kind_name(FailureKind k);

struct FailureClassification {
  FailureKind kind = FailureKind::None;
  Vec v1;
  Vec v2;
  double lambda = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

// Kernel-witness classification of a non-skew pair: a smallest-singular
// right vector with lambda ~ 0 exhibits parallel tangent lines, otherwise
// intersecting ones.
FailureClassification classify_failure(const PolyMap& f, const Vec& p, const Vec& q,
                                       double tol = 1e-9);

struct LineOracleResult {
  bool skew = false;
  FailureKind kind = FailureKind::None;
  double sigma3 = 0.0;  // smallest singular value of [d1 | d2 | p2 - p1], columns normalized
};

// Direct two-line test: skew iff [d1 | d2 | p2-p1] has rank 3; parallel iff
// [d1 | d2] has rank 1; intersecting otherwise.
LineOracleResult line_pair_oracle(const Vec& p1, const Vec& d1, const Vec& p2, const Vec& d2,
                                  double tol = 1e-9);

struct SweepOptions {
  double r = 0.05;
  int trials = 10000;
  double tol = 1e-9;
  std::uint64_t seed = 12345;
  int threads = 0;
  int cross_stride = 100;  // every cross_stride-th pair gets a line-oracle check
};

struct SweepReport {
  bool pass = false;
  double min_sigma = 0.0;  // smallest blow-up-matrix sigma_min over all pairs
  Vec worst_p;
  Vec worst_q;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double r = 0.0;
  int non_skew = 0;
  int cross_checks = 0;
  int cross_disagreements = 0;
  FailureClassification worst_failure;  // classification of the worst failing pair
};

// Samples `trials` uniform pairs in B_r(a) (separation > r * 1e-6), decides
// each pair through the blow-up matrix margin (rank-equivalent to the raw
// pair matrix and nondegenerate near the diagonal), and line-oracle
// cross-validates a 1% subset. Deterministic for a fixed seed.
SweepReport sweep_neighborhood(const PolyMap& f, const Vec& a, const SweepOptions& opts);

}  // namespace skewcheck
