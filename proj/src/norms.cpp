#include "skewcheck/norms.hpp"

#include "skewcheck/rng.hpp"

namespace skewcheck {

namespace {

double diag_value(const SymMultiMap& m, const Vec& x) { return m.apply_diag(x).norm(); }

// N x n Jacobian of x -> m(x, ..., x) divided by k: the map m(x, .., x, .).
Mat partial_matrix(const SymMultiMap& m, const Vec& x) {
  if (m.degree() == 1) return m.as_matrix();
  SymMultiMap cur = m.contract(x);
  while (cur.degree() > 1) cur = cur.contract(x);
  return cur.as_matrix();
}

}  // namespace

double operator_norm_estimate(const SymMultiMap& m, const NormEstimateOptions& opts) {
  const int n = m.domain_dim();
  if (n == 1) {
    Vec e = Vec::Ones(1);
    return diag_value(m, e) * opts.safety;
  }
  double best = 0.0;
  Vec best_x = Vec::Unit(n, 0);
  auto rng = rng_stream(opts.seed, static_cast<std::uint64_t>(m.degree()));
  for (int s = 0; s < opts.samples; ++s) {
    const Vec x = random_unit_vector(rng, n);
    const double v = diag_value(m, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  // Ascent refinement from the best sample: x <- normalize(M_x^T m(x..x)),
  // the power iteration direction of the squared diagonal value.
  Vec x = best_x;
  for (int it = 0; it < opts.refine_iterations; ++it) {
    const Vec fx = m.apply_diag(x);
    const Vec g = partial_matrix(m, x).transpose() * fx;
    const double gn = g.norm();
    if (gn < 1e-300) break;
    x = g / gn;
    const double v = diag_value(m, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best * opts.safety;
}

}  // namespace skewcheck
