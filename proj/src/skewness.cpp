#include "skewcheck/skewness.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skewcheck/blowup.hpp"
#include "skewcheck/parallel.hpp"
#include "skewcheck/rng.hpp"

namespace skewcheck {

const char* failure_kind_name(FailureKind k) {
  switch (k) {
    case FailureKind::Parallel: return "parallel";
    case FailureKind::Intersecting: return "intersecting";
    default: return "none";
  }
}

MatT<long double> pair_matrix_ld(const PolyMap& f, const VecT<long double>& p,
                                 const VecT<long double>& q) {
  using LD = long double;
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  if (p.size() != n || q.size() != n)
    throw std::invalid_argument("pair_matrix: dimension mismatch");
  if ((p - q).norm() == 0.0L)
    throw std::domain_error("pair_matrix: points must be distinct");
  MatT<LD> m(N, 2 * n + 1);
  m.block(0, 0, N, n) = f.jacobian_t<LD>(p);
  m.block(0, n, N, n) = f.jacobian_t<LD>(q);
  m.col(2 * n) = f.difference<LD>(p, q - p);
  return m;
}

MatT<long double> pair_matrix_ld(const PolyMap& f, const Vec& p, const Vec& q) {
  return pair_matrix_ld(f, p.cast<long double>().eval(), q.cast<long double>().eval());
}

PairMatrix pair_matrix(const PolyMap& f, const Vec& p, const Vec& q) {
  PairMatrix out;
  out.p = p;
  out.q = q;
  out.m = pair_matrix_ld(f, p, q).cast<double>();
  out.sigma = sigma_info(out.m);
  return out;
}

PairSkewResult is_pair_skew(const PolyMap& f, const Vec& p, const Vec& q, double tol) {
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  PairSkewResult out;
  const PairMatrix pm = pair_matrix(f, p, q);
  out.sigma_min = pm.sigma.sigma_min;
  out.sigma_max = pm.sigma.sigma_max;
  if (N < 2 * n + 1) {
    out.skew = false;
    out.reason = "dimension too small: N < 2n+1";
    return out;
  }
  out.skew = out.sigma_min > tol * out.sigma_max;
  return out;
}

FailureClassification classify_failure(const PolyMap& f, const Vec& p, const Vec& q,
                                       double tol) {
  const int n = f.domain_dim();
  const PairMatrix pm = pair_matrix(f, p, q);
  FailureClassification out;
  out.sigma_min = pm.sigma.sigma_min;
  out.sigma_max = pm.sigma.sigma_max;
  if (f.codomain_dim() >= 2 * n + 1 && out.sigma_min > tol * out.sigma_max) {
    out.kind = FailureKind::None;
    return out;
  }
  const Vec& w = pm.sigma.min_right_singular;
  out.v1 = w.head(n);
  out.v2 = w.segment(n, n);
  out.lambda = w[2 * n];
  const double tangential = std::hypot(out.v1.norm(), out.v2.norm());
  out.kind = std::abs(out.lambda) <= tol * tangential ? FailureKind::Parallel
                                                      : FailureKind::Intersecting;
  return out;
}

LineOracleResult line_pair_oracle(const Vec& p1, const Vec& d1, const Vec& p2, const Vec& d2,
                                  double tol) {
  const auto dim = p1.size();
  if (d1.size() != dim || p2.size() != dim || d2.size() != dim)
    throw std::invalid_argument("line_pair_oracle: dimension mismatch");
  if (dim < 2) throw std::invalid_argument("line_pair_oracle: ambient dimension must be >= 2");
  const double n1 = d1.norm();
  const double n2 = d2.norm();
  if (n1 == 0.0 || n2 == 0.0)
    throw std::invalid_argument("line_pair_oracle: zero direction");
  LineOracleResult out;

  Mat dirs(dim, 2);
  dirs.col(0) = d1 / n1;
  dirs.col(1) = d2 / n2;
  const SigmaInfo dir_sigma = sigma_info(dirs);
  const bool parallel = dir_sigma.sigma_min <= tol * dir_sigma.sigma_max;

  Vec sep = p2 - p1;
  const double sep_norm = sep.norm();
  if (sep_norm == 0.0) {
    out.skew = false;
    out.kind = parallel ? FailureKind::Parallel : FailureKind::Intersecting;
    return out;
  }
  Mat m(dim, 3);
  m.col(0) = dirs.col(0);
  m.col(1) = dirs.col(1);
  m.col(2) = sep / sep_norm;
  const SigmaInfo sigma = sigma_info(m);
  out.sigma3 = sigma.sigma_min;
  out.skew = sigma.sigma_min > tol * sigma.sigma_max;
  if (out.skew) {
    out.kind = FailureKind::None;
  } else {
    out.kind = parallel ? FailureKind::Parallel : FailureKind::Intersecting;
  }
  return out;
}

SweepReport sweep_neighborhood(const PolyMap& f, const Vec& a, const SweepOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("sweep_neighborhood: trials must be >= 1");
  if (!(opts.r > 0.0)) throw std::invalid_argument("sweep_neighborhood: radius must be > 0");
  const int n = f.domain_dim();
  const auto trials = static_cast<std::size_t>(opts.trials);
  const double min_sep = opts.r * 1e-6;

  struct TrialOut {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    bool skew = false;
    bool crossed = false;
    bool disagreed = false;
    Vec p, q;
  };
  std::vector<TrialOut> results(trials);

  for_each_index(trials, [&](std::size_t i) {
    auto rng = rng_stream(opts.seed, i);
    TrialOut& r = results[i];
    r.p = random_in_ball(rng, a, opts.r);
    r.q = random_in_ball(rng, a, opts.r);
    while ((r.q - r.p).norm() <= min_sep) r.q = random_in_ball(rng, a, opts.r);
    const double t = (r.q - r.p).norm();
    const Vec y = ((r.q - r.p) / t).normalized();
    const Mat fb = blowup_matrix(f, BlowupPoint(r.p, y, t));
    const SigmaInfo sigma = sigma_info(fb);
    r.sigma_min = sigma.sigma_min;
    r.sigma_max = sigma.sigma_max;
    r.skew = f.codomain_dim() >= 2 * n + 1 && r.sigma_min > opts.tol * r.sigma_max;
    if (opts.cross_stride > 0 && i % static_cast<std::size_t>(opts.cross_stride) == 0) {
      r.crossed = true;
      const Vec u = random_unit_vector(rng, n);
      const Vec w = random_unit_vector(rng, n);
      const auto oracle = line_pair_oracle(f.eval(r.p), f.jacobian(r.p) * u,
                                           f.eval(r.q), f.jacobian(r.q) * w, opts.tol);
      r.disagreed = r.skew && !oracle.skew;
    }
  }, opts.threads);

  SweepReport report;
  report.trials = opts.trials;
  report.seed = opts.seed;
  report.tol = opts.tol;
  report.r = opts.r;
  MinLoc worst;
  MinLoc worst_fail;
  for (std::size_t i = 0; i < trials; ++i) {
    const TrialOut& r = results[i];
    const MinLoc cur{r.sigma_min, i};
    if (improves(cur, worst)) worst = cur;
    if (!r.skew) {
      ++report.non_skew;
      if (improves(cur, worst_fail)) worst_fail = cur;
    }
    if (r.crossed) ++report.cross_checks;
    if (r.disagreed) ++report.cross_disagreements;
  }
  report.min_sigma = worst.value;
  report.worst_p = results[worst.index].p;
  report.worst_q = results[worst.index].q;
  if (report.non_skew > 0) {
    const TrialOut& wf = results[worst_fail.index];
    report.worst_failure = classify_failure(f, wf.p, wf.q, opts.tol);
  }
  report.pass = report.non_skew == 0 && report.cross_disagreements == 0;
  return report;
}

}  // namespace skewcheck
