#include "skewcheck/constructions.hpp"

#include <stdexcept>

#include "skewcheck/parallel.hpp"
#include "skewcheck/rng.hpp"

namespace skewcheck {

SymMultiMap conv_bilinear(int n) {
  if (n < 1) throw std::invalid_argument("conv_bilinear: need n >= 1");
  const MultiIndexSet set(n, 2);
  Mat coeffs = Mat::Zero(2 * n, set.size());
  for (int r = 0; r < set.size(); ++r) {
    const auto& t = set.tuple(r);
    coeffs(t[0] + t[1] + 1, r) = 1.0;
  }
  return SymMultiMap(n, 2 * n, 2, coeffs);
}

SymMultiMap diag_trilinear(int n) {
  if (n < 1) throw std::invalid_argument("diag_trilinear: need n >= 1");
  const MultiIndexSet set(n, 3);
  Mat coeffs = Mat::Zero(2 * n, set.size());
  for (int r = 0; r < set.size(); ++r) {
    const auto& t = set.tuple(r);
    if (t[0] == t[1] && t[1] == t[2]) coeffs(t[0], r) = 1.0;
  }
  return SymMultiMap(n, 2 * n, 3, coeffs);
}

SymMultiMap embed_middle_block(const SymMultiMap& m, int n, int N) {
  if (m.codomain_dim() != 2 * n || N < 3 * n)
    throw std::invalid_argument("embed_middle_block: shape mismatch");
  Mat coeffs = Mat::Zero(N, m.coeffs().cols());
  coeffs.block(n, 0, 2 * n, m.coeffs().cols()) = m.coeffs();
  return SymMultiMap(n, N, m.degree(), coeffs);
}

PolyMap skew_cubic(int n) {
  if (n < 1) throw std::invalid_argument("skew_cubic: need n >= 1");
  const int N = 3 * n;
  Mat lin = Mat::Zero(N, n);
  lin.block(0, 0, n, n) = Mat::Identity(n, n);
  std::vector<SymMultiMap> parts;
  parts.emplace_back(n, N, 1, lin);
  parts.push_back(embed_middle_block(conv_bilinear(n), n, N));
  parts.push_back(embed_middle_block(diag_trilinear(n), n, N));
  return PolyMap(n, N, Vec::Zero(N), std::move(parts));
}

namespace {

int lowest_nonzero(const Vec& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) return i;
  }
  return -1;
}

}  // namespace

ConvCheckReport conv_nonsingular_check(int n, const std::string& mode, int trials,
                                       std::uint64_t seed) {
  const SymMultiMap b = conv_bilinear(n);
  ConvCheckReport report;
  report.mode = mode;
  report.trials = trials;
  if (mode == "exact") {
    bool ok = true;
    // Basis pairs: the single surviving term is the coefficient itself.
    for (int i = 0; i < n && ok; ++i) {
      for (int j = 0; j < n && ok; ++j) {
        const Vec v = b.apply(Vec::Unit(n, i), Vec::Unit(n, j));
        ok = v[i + j + 1] == 1.0 && v.norm() == 1.0;
      }
    }
    // Random vectors with random zero prefixes: component i0+j0+1 must equal
    // x_{i0} y_{j0} exactly.
    for (int trial = 0; trial < trials && ok; ++trial) {
      auto rng = rng_stream(seed, static_cast<std::uint64_t>(trial));
      std::uniform_int_distribution<int> prefix(0, n - 1);
      Vec x = gaussian_vector(rng, n);
      Vec y = gaussian_vector(rng, n);
      x.head(prefix(rng)).setZero();
      y.head(prefix(rng)).setZero();
      const int i0 = lowest_nonzero(x);
      const int j0 = lowest_nonzero(y);
      if (i0 < 0 || j0 < 0) continue;  // zero argument: claim vacuous
      const Vec v = b.apply(x, y);
      ok = v[i0 + j0 + 1] == x[i0] * y[j0];
    }
    report.pass = ok;
    return report;
  }
  if (mode != "sampled") throw std::invalid_argument("conv_nonsingular_check: unknown mode");
  const MinLoc min = min_index(static_cast<std::size_t>(trials), [&](std::size_t i) {
    auto rng = rng_stream(seed, i);
    const Vec x = random_unit_vector(rng, n);
    const Vec y = random_unit_vector(rng, n);
    return b.apply(x, y).norm();
  }, 0);
  report.min_norm = min.value;
  report.pass = min.value > 0.0;
  return report;
}

TriangularResult triangular_oracle(const Vec& x, double lambda, const Vec& y) {
  if (lambda == 0.0)
    throw std::domain_error("triangular_oracle: requires lambda != 0");
  if (x.size() != y.size()) throw std::invalid_argument("triangular_oracle: dimension mismatch");
  TriangularResult out;
  for (int k = 0; k < y.size(); ++k) {
    if (y[k] != 0.0) {
      out.forced_zero = false;
      out.contradiction_index = k;
      return out;
    }
  }
  out.forced_zero = true;
  out.contradiction_index = -1;
  return out;
}

SymMultiMap appendix_bilinear(int n) {
  if (n < 2) throw std::invalid_argument("appendix_bilinear: need n >= 2");
  const MultiIndexSet set(n, 2);
  Mat coeffs = Mat::Zero(2 * n, set.size());
  for (int r = 0; r < set.size(); ++r) {
    const auto& t = set.tuple(r);
    if (t[0] == 0 && t[1] == n - 1) continue;  // the excluded pair maps to zero
    coeffs(t[0] + t[1] + 1, r) = 1.0;
  }
  return SymMultiMap(n, 2 * n, 2, coeffs);
}

PolyMap appendix_triple(int n, int N) {
  if (n < 2) throw std::invalid_argument("appendix_triple: need n >= 2");
  if (N < 3 * n) throw std::invalid_argument("appendix_triple: need N >= 3n");
  Mat lin = Mat::Zero(N, n);
  lin.block(0, 0, n, n) = Mat::Identity(n, n);
  const auto embed = [&](const SymMultiMap& m) {
    Mat coeffs = Mat::Zero(N, m.coeffs().cols());
    coeffs.block(n, 0, 2 * n, m.coeffs().cols()) = m.coeffs();
    return SymMultiMap(n, N, m.degree(), coeffs);
  };
  std::vector<SymMultiMap> parts;
  parts.emplace_back(n, N, 1, lin);
  parts.push_back(embed(appendix_bilinear(n)));
  parts.push_back(embed(diag_trilinear(n)));
  return PolyMap(n, N, Vec::Zero(N), std::move(parts));
}

}  // namespace skewcheck
