#include "skewcheck/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "skewcheck/parallel.hpp"
#include "skewcheck/rng.hpp"
#include "skewcheck/sphere.hpp"
#include "skewcheck/svd_utils.hpp"

namespace skewcheck {

CurveJet curve_jet(const PolyMap& f, double t0) {
  if (f.domain_dim() != 1) throw std::invalid_argument("curve_jet: requires a map on R^1");
  Vec a(1);
  a << t0;
  CurveJet jet;
  jet.t0 = t0;
  jet.g1 = f.jacobian(a).col(0);
  jet.g2 = f.derivative(a, 2).coeffs().col(0);
  jet.g3 = f.derivative(a, 3).coeffs().col(0);
  return jet;
}

SecondFundamentalForm second_fundamental_form(const PolyMap& f, const Vec& a, double tol) {
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  const Mat jac = f.jacobian(a);
  const SigmaInfo sigma = sigma_info(jac);
  if (N < n || sigma.sigma_min <= tol * sigma.sigma_max)
    throw std::domain_error("second_fundamental_form: Df_a is not injective");
  // Orthonormal tangent frame in fixed column order.
  Eigen::HouseholderQR<Mat> qr(jac);
  const Mat q = Mat(qr.householderQ()).leftCols(n);
  const SymMultiMap d2 = f.derivative(a, 2);
  Mat coeffs = d2.coeffs();
  coeffs -= q * (q.transpose() * coeffs);
  SecondFundamentalForm out{a, SymMultiMap(n, N, 2, coeffs), q};
  return out;
}

BilinearMinResult ii_nonsingular(const SecondFundamentalForm& form,
                                 const BilinearMinOptions& opts) {
  const SymMultiMap& b = form.form;
  const int n = b.domain_dim();
  BilinearMinResult out;
  if (n == 1) {
    const Vec e = Vec::Ones(1);
    out.min_norm = b.apply(e, e).norm();
    out.witness_x = e;
    out.witness_y = e;
    out.nonsingular = out.min_norm > opts.tol;
    return out;
  }

  struct Candidate {
    double value;
    Vec x, y;
  };
  std::vector<Candidate> pool;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec x = Vec::Unit(n, i);
      const Vec y = Vec::Unit(n, j);
      pool.push_back({b.apply(x, y).norm(), x, y});
    }
  }
  const std::size_t base = pool.size();
  pool.resize(base + static_cast<std::size_t>(opts.samples));
  for_each_index(static_cast<std::size_t>(opts.samples), [&](std::size_t i) {
    auto rng = rng_stream(opts.seed, i);
    Candidate c;
    c.x = random_unit_vector(rng, n);
    c.y = random_unit_vector(rng, n);
    c.value = b.apply(c.x, c.y).norm();
    pool[base + i] = c;
  }, opts.threads);

  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(opts.starts),
                                                   pool.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts),
                    order.end(), [&](std::size_t u, std::size_t v) {
                      if (pool[u].value != pool[v].value) return pool[u].value < pool[v].value;
                      return u < v;
                    });

  Candidate best = pool[order[0]];
  for (std::size_t s = 0; s < starts; ++s) {
    Candidate c = pool[order[s]];
    // Alternating exact minimization: fixing one argument makes the map
    // linear in the other, so the best partner is a right-singular vector.
    for (int it = 0; it < opts.iterations; ++it) {
      const SigmaInfo sy = sigma_info(b.contract(c.x).as_matrix());
      c.y = sy.min_right_singular;
      const SigmaInfo sx = sigma_info(b.contract(c.y).as_matrix());
      c.x = sx.min_right_singular;
      const double v = b.apply(c.x, c.y).norm();
      if (v >= c.value - 1e-15) {
        c.value = std::min(c.value, v);
        break;
      }
      c.value = v;
    }
    if (c.value < best.value) best = c;
  }
  out.min_norm = best.value;
  out.witness_x = best.x;
  out.witness_y = best.y;
  out.nonsingular = best.value > opts.tol;
  return out;
}

Vec faa_di_bruno_third(const PolyMap& f, const Vec& a, const CurveJet& jet) {
  const Jet3 j = f.jet3(a);
  return j.d1 * jet.g3 + j.d2.apply(3.0 * jet.g2, jet.g1) +
         j.d3.apply(jet.g1, jet.g1, jet.g1);
}

namespace {

double span_residual(const Jet3& jet, const Vec& y) {
  const int n = static_cast<int>(jet.d1.cols());
  const int N = static_cast<int>(jet.d1.rows());
  Mat basis(N, 2 * n);
  basis.leftCols(n) = jet.d1;
  basis.rightCols(n) = jet.d2.contract(y).as_matrix();
  const Vec c = jet.d3.apply(y, y, y);
  Eigen::ColPivHouseholderQR<Mat> qr(basis);
  const auto rank = qr.rank();
  if (rank == 0) return c.norm();
  const Mat q = Mat(qr.householderQ()).leftCols(rank);
  return (c - q * (q.transpose() * c)).norm();
}

}  // namespace

CurveConditionResult curve_third_derivative_condition(const PolyMap& f, const Vec& a,
                                                      const LocalOptions& opts) {
  const int n = f.domain_dim();
  const Jet3 jet = f.jet3(a);
  const auto value = [&](const Vec& y) { return span_residual(jet, y); };
  SphereMinOptions sopts;
  sopts.samples_per_dim = opts.samples_per_dim;
  sopts.starts = opts.starts;
  sopts.descent_steps = opts.descent_steps;
  sopts.seed = opts.seed;
  sopts.threads = opts.threads;
  const SphereMinResult min = minimize_on_sphere(n, value, sopts);
  CurveConditionResult out;
  out.min_residual = min.min_value;
  out.argmin_y = min.argmin;
  out.holds = min.min_value > opts.tol;
  return out;
}

double torsion(const CurveJet& jet, double tol) {
  if (jet.g1.size() != 3) throw std::invalid_argument("torsion: requires a jet in R^3");
  const Eigen::Vector3d g1 = jet.g1.head<3>();
  const Eigen::Vector3d g2 = jet.g2.head<3>();
  const Eigen::Vector3d g3 = jet.g3.head<3>();
  const Eigen::Vector3d cr = g1.cross(g2);
  const double denom = cr.squaredNorm();
  if (cr.norm() <= tol)
    throw std::domain_error("torsion: undefined (gamma', gamma'' dependent)");
  return cr.dot(g3) / denom;
}

EquivalenceReport equivalence_check(const PolyMap& f, const Vec& a, const LocalOptions& opts) {
  EquivalenceReport out;
  out.local = check_local_condition(f, a, opts);
  const SecondFundamentalForm form = second_fundamental_form(f, a);
  BilinearMinOptions bopts;
  bopts.tol = opts.tol;
  bopts.seed = opts.seed;
  bopts.threads = opts.threads;
  out.ii = ii_nonsingular(form, bopts);
  out.curve = curve_third_derivative_condition(f, a, opts);
  const bool local = out.local.holds == Holds::True;
  out.equivalence_holds = local == (out.ii.nonsingular && out.curve.holds);
  out.borderline = out.local.min_sigma < 10.0 * opts.tol || out.ii.min_norm < 10.0 * opts.tol ||
                   out.curve.min_residual < 10.0 * opts.tol;
  if (f.domain_dim() == 1 && f.codomain_dim() == 3) {
    const CurveJet jet = curve_jet(f, a[0]);
    try {
      out.curve_torsion = torsion(jet);
    } catch (const std::domain_error&) {
      out.curve_torsion = std::nullopt;
    }
  }
  return out;
}

Jet3 compose_jet3(const Jet3& outer, const Jet3& inner) {
  const int n = static_cast<int>(inner.d1.cols());
  const int N = static_cast<int>(outer.d1.rows());
  if (outer.d1.cols() != inner.d1.rows())
    throw std::invalid_argument("compose_jet3: dimension mismatch");

  const auto g1col = [&](int i) { return Vec(inner.d1.col(i)); };
  const MultiIndexSet set2(n, 2);
  Mat c2(N, set2.size());
  for (int r = 0; r < set2.size(); ++r) {
    const auto& t = set2.tuple(r);
    c2.col(r) = outer.d2.apply(g1col(t[0]), g1col(t[1])) +
                outer.d1 * inner.d2.apply(Vec::Unit(n, t[0]), Vec::Unit(n, t[1]));
  }

  const MultiIndexSet set3(n, 3);
  Mat c3(N, set3.size());
  for (int r = 0; r < set3.size(); ++r) {
    const auto& t = set3.tuple(r);
    const Vec ei = Vec::Unit(n, t[0]);
    const Vec ej = Vec::Unit(n, t[1]);
    const Vec el = Vec::Unit(n, t[2]);
    c3.col(r) = outer.d3.apply(g1col(t[0]), g1col(t[1]), g1col(t[2])) +
                outer.d2.apply(inner.d2.apply(ei, ej), g1col(t[2])) +
                outer.d2.apply(inner.d2.apply(ei, el), g1col(t[1])) +
                outer.d2.apply(inner.d2.apply(ej, el), g1col(t[0])) +
                outer.d1 * inner.d3.apply(ei, ej, el);
  }
  return Jet3{outer.value, outer.d1 * inner.d1, SymMultiMap(n, N, 2, c2),
              SymMultiMap(n, N, 3, c3)};
}

PolyMap polymap_from_jet3(const Jet3& jet, const Vec& at) {
  const int n = static_cast<int>(jet.d1.cols());
  const int N = static_cast<int>(jet.d1.rows());
  std::vector<SymMultiMap> parts;
  parts.emplace_back(n, N, 1, jet.d1);
  parts.push_back(jet.d2);
  parts.push_back(jet.d3);
  const PolyMap centered(n, N, jet.value, std::move(parts));
  if (at.isZero(0.0)) return centered;
  return centered.shift(-at);
}

}  // namespace skewcheck
