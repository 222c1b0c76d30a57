#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "skewcheck/local_condition.hpp"
#include "skewcheck/polymap.hpp"

namespace skewcheck {

// A triple (L, B, T) of linear, symmetric bilinear, and symmetric trilinear
// maps R^n -> R^N; the coordinates of the space of cubic 3-jets at 0.
struct JetTriple {
  int n;
  int N;
  SymMultiMap L;
  SymMultiMap B;
  SymMultiMap T;

  // x -> L(x) + B(x,x)/2 + T(x,x,x)/6.
  PolyMap to_polymap() const;
  JetTriple scaled(double c) const;
};

// I.i.d. standard-Gaussian coefficients in the graded-lex basis.
JetTriple sample_triple(int n, int N, std::uint64_t seed);

struct GenericityOptions {
  std::uint64_t seed = 12345;
  int threads = 0;
  // A trial counts as a confirmed failure only with a tiny refined minimum
  // and a confirmed kernel witness.
  double sigma_threshold = 1e-10;
  double residual_threshold = 1e-8;
  LocalOptions local;
};

struct GenericityReport {
  int n = 0;
  int N = 0;
  int trials = 0;
  int failures = 0;
  std::array<double, 3> quartiles{0.0, 0.0, 0.0};  // of per-trial min_sigma
  std::uint64_t seed = 0;
  bool asserted = false;  // an expected failure count applies to this (n, N)
  bool pass = false;      // meaningful when asserted
  std::vector<double> min_sigmas;  // per-trial minima, trial order
};

// Samples random triples and checks the third-order condition at 0 for each.
// Expected counts are asserted for N >= 3n (zero failures) and N < 2n+1
// (all fail); the intermediate regime is reported without assertion.
GenericityReport genericity_experiment(int n, int N, int trials,
                                       const GenericityOptions& opts = {});

// The N x (3n-1) system mapping fiber-tangent directions (w1, w2, nu, w3),
// restricted to the two orthogonality constraints at the appendix-triple
// failure point, through
//   L(w1) + B(w2, v3) + B(v2, w3) + nu T(v3,v3,v3) + 3 lambda T(w3, v3, v3).
Mat appendix_tangent_system(int n, int N);

// Same map on the full (3n+1)-dimensional domain (constraints dropped).
Mat appendix_tangent_system_unconstrained(int n, int N);

struct TransversalityResult {
  bool injective = false;
  double sigma_min = 0.0;
  int unconstrained_kernel_dim = 0;
};

TransversalityResult transversality_check(int n, int N, double tol = 1e-8);

}  // namespace skewcheck
