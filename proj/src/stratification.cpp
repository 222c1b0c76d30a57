#include "skewcheck/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewcheck/constructions.hpp"
#include "skewcheck/parallel.hpp"
#include "skewcheck/rng.hpp"
#include "skewcheck/svd_utils.hpp"

namespace skewcheck {

PolyMap JetTriple::to_polymap() const {
  return PolyMap(n, N, Vec::Zero(N), {L, B, T});
}

JetTriple JetTriple::scaled(double c) const {
  return JetTriple{n, N, SymMultiMap(n, N, 1, c * L.coeffs()), SymMultiMap(n, N, 2, c * B.coeffs()),
                   SymMultiMap(n, N, 3, c * T.coeffs())};
}

namespace {

Mat gaussian_block(std::mt19937_64& rng, int rows, long long cols) {
  std::normal_distribution<double> normal;
  Mat m(rows, cols);
  for (long long c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = normal(rng);
  }
  return m;
}

}  // namespace

JetTriple sample_triple(int n, int N, std::uint64_t seed) {
  auto rng = rng_stream(seed, 0);
  SymMultiMap l(n, N, 1, gaussian_block(rng, N, MultiIndexSet::count(n, 1)));
  SymMultiMap b(n, N, 2, gaussian_block(rng, N, MultiIndexSet::count(n, 2)));
  SymMultiMap t(n, N, 3, gaussian_block(rng, N, MultiIndexSet::count(n, 3)));
  return JetTriple{n, N, std::move(l), std::move(b), std::move(t)};
}

GenericityReport genericity_experiment(int n, int N, int trials,
                                       const GenericityOptions& opts) {
  if (trials < 1) throw std::invalid_argument("genericity_experiment: trials must be >= 1");
  GenericityReport report;
  report.n = n;
  report.N = N;
  report.trials = trials;
  report.seed = opts.seed;
  report.min_sigmas.resize(static_cast<std::size_t>(trials));
  std::vector<char> failed(static_cast<std::size_t>(trials), 0);

  LocalOptions local = opts.local;
  local.threads = 1;  // trials are the parallel axis
  for_each_index(static_cast<std::size_t>(trials), [&](std::size_t i) {
    auto rng = rng_stream(opts.seed, i);
    std::uniform_int_distribution<std::uint32_t> u32;
    const std::uint64_t trial_seed =
        (static_cast<std::uint64_t>(u32(rng)) << 32) | u32(rng);
    const JetTriple triple = sample_triple(n, N, trial_seed);
    const PolyMap f = triple.to_polymap();
    const LocalConditionReport rep = check_local_condition(f, Vec::Zero(n), local);
    report.min_sigmas[i] = rep.min_sigma;
    const bool tiny = rep.min_sigma < opts.sigma_threshold;
    const bool witnessed = rep.witness && rep.witness->residual < opts.residual_threshold;
    failed[i] = (tiny && witnessed) ? 1 : 0;
  }, opts.threads);

  for (std::size_t i = 0; i < failed.size(); ++i) report.failures += failed[i];

  std::vector<double> sorted = report.min_sigmas;
  std::sort(sorted.begin(), sorted.end());
  const auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * sorted[lo] + w * sorted[hi];
  };
  report.quartiles = {quantile(0.25), quantile(0.5), quantile(0.75)};

  if (N >= 3 * n) {
    report.asserted = true;
    report.pass = report.failures == 0;
  } else if (N < 2 * n + 1) {
    report.asserted = true;
    report.pass = report.failures == trials;
  } else {
    report.asserted = false;
    report.pass = true;
  }
  return report;
}

Mat appendix_tangent_system_unconstrained(int n, int N) {
  if (n < 2) throw std::invalid_argument("appendix_tangent_system: need n >= 2");
  if (N < 3 * n) throw std::invalid_argument("appendix_tangent_system: need N >= 3n");
  const PolyMap f = appendix_triple(n, N);
  const SymMultiMap& l = f.part(1);
  const SymMultiMap& b = f.part(2);
  const SymMultiMap& t = f.part(3);

  // Failure point: (v1, v2, lambda) = (0, e_n, 0), v3 = e_1 (1-based).
  const Vec v2 = Vec::Unit(n, n - 1);
  const Vec v3 = Vec::Unit(n, 0);
  const double lambda = 0.0;

  Mat m = Mat::Zero(N, 3 * n + 1);
  m.block(0, 0, N, n) = l.as_matrix();                       // w1 block
  m.block(0, n, N, n) = b.contract(v3).as_matrix();          // B(w2, v3)
  m.col(2 * n) = t.apply(v3, v3, v3);                        // nu column
  m.block(0, 2 * n + 1, N, n) =
      b.contract(v2).as_matrix() +
      3.0 * lambda * t.contract(v3).contract(v3).as_matrix();  // B(v2, w3) + 3 lambda T(w3,v3,v3)
  return m;
}

Mat appendix_tangent_system(int n, int N) {
  const Mat full = appendix_tangent_system_unconstrained(n, N);
  const int dim = 3 * n + 1;

  // Constraint normals: (w1, w2, nu) . (v1, v2, lambda) = 0 and w3 . v3 = 0.
  Vec c1 = Vec::Zero(dim);
  c1[n + (n - 1)] = 1.0;  // v2 = e_n
  Vec c2 = Vec::Zero(dim);
  c2[2 * n + 1 + 0] = 1.0;  // v3 = e_1

  // Orthonormal basis of the joint null space by fixed-order orthonormalization
  // of coordinate vectors against the normals and the accepted basis.
  std::vector<Vec> basis;
  basis.reserve(static_cast<std::size_t>(dim - 2));
  for (int j = 0; j < dim && static_cast<int>(basis.size()) < dim - 2; ++j) {
    Vec cand = Vec::Unit(dim, j);
    cand -= cand.dot(c1) * c1;
    cand -= cand.dot(c2) * c2;
    for (const Vec& u : basis) cand -= cand.dot(u) * u;
    const double norm = cand.norm();
    if (norm > 1e-10) basis.push_back(cand / norm);
  }
  if (static_cast<int>(basis.size()) != dim - 2)
    throw std::logic_error("appendix_tangent_system: null-space basis construction failed");

  Mat restricted(full.rows(), dim - 2);
  for (int j = 0; j < dim - 2; ++j) restricted.col(j) = full * basis[static_cast<std::size_t>(j)];
  return restricted;
}

TransversalityResult transversality_check(int n, int N, double tol) {
  TransversalityResult out;
  const Mat restricted = appendix_tangent_system(n, N);
  out.sigma_min = sigma_min_only(restricted);
  out.injective = out.sigma_min > tol;
  const Mat full = appendix_tangent_system_unconstrained(n, N);
  out.unconstrained_kernel_dim =
      static_cast<int>(full.cols()) - numerical_rank(full, 1e-8);
  return out;
}

}  // namespace skewcheck
