#include "skewcheck/local_condition.hpp"

#include <cmath>
#include <stdexcept>

#include "skewcheck/norms.hpp"
#include "skewcheck/sphere.hpp"
#include "skewcheck/svd_utils.hpp"

namespace skewcheck {

const char* holds_name(Holds h) {
  switch (h) {
    case Holds::True: return "true";
    case Holds::False: return "false";
    default: return "unknown";
  }
}

Mat boundary_matrix_from_jet(const Jet3& jet, const Vec& y) {
  const int n = static_cast<int>(jet.d1.cols());
  const int N = static_cast<int>(jet.d1.rows());
  if (y.size() != n) throw std::invalid_argument("boundary_matrix: dimension mismatch");
  if (std::abs(y.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("boundary_matrix: direction must be a unit vector");
  Mat m(N, 2 * n + 1);
  m.block(0, 0, N, n) = jet.d1;
  const SymMultiMap d2y = jet.d2.contract(y);
  m.block(0, n, N, n) = d2y.as_matrix();
  m.col(2 * n) = jet.d3.apply(y, y, y);
  return m;
}

Mat boundary_matrix(const PolyMap& f, const Vec& a, const Vec& y) {
  return boundary_matrix_from_jet(f.jet3(a), y);
}

namespace {

KernelWitness witness_from_sigma(const SigmaInfo& sigma, const Mat& m, int n) {
  KernelWitness w;
  const Vec& v = sigma.min_right_singular;
  w.v1 = v.head(n);
  w.v2 = v.segment(n, n);
  w.lambda = v[2 * n];
  w.residual = (m * v).norm();
  w.sigma_min = sigma.sigma_min;
  return w;
}

LocalConditionReport structural_failure(const PolyMap& f, const Vec& a, double tol,
                                        const std::string& mode) {
  LocalConditionReport report;
  report.mode = mode;
  report.tol = tol;
  report.holds = Holds::False;
  report.reason = "N < 2n+1";
  report.argmin_y = Vec::Unit(f.domain_dim(), 0);
  const Mat m = boundary_matrix(f, a, report.argmin_y);
  const SigmaInfo sigma = sigma_info(m);
  report.min_sigma = sigma.sigma_min;
  report.witness = witness_from_sigma(sigma, m, f.domain_dim());
  report.evaluations = 1;
  return report;
}

}  // namespace

std::optional<KernelWitness> kernel_witness(const PolyMap& f, const Vec& a, const Vec& y,
                                            double rel_tol) {
  const Mat m = boundary_matrix(f, a, y);
  const SigmaInfo sigma = sigma_info(m);
  if (sigma.sigma_min > rel_tol * sigma.sigma_max) return std::nullopt;
  return witness_from_sigma(sigma, m, f.domain_dim());
}

LocalConditionReport check_local_condition(const PolyMap& f, const Vec& a,
                                           const LocalOptions& opts) {
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  if (a.size() != n) throw std::invalid_argument("check_local_condition: dimension mismatch");
  if (N < 2 * n + 1) return structural_failure(f, a, opts.tol, "heuristic");

  const Jet3 jet = f.jet3(a);
  const auto value = [&](const Vec& y) {
    return sigma_min_only(boundary_matrix_from_jet(jet, y));
  };
  SphereMinOptions sopts;
  sopts.samples_per_dim = opts.samples_per_dim;
  sopts.starts = opts.starts;
  sopts.descent_steps = opts.descent_steps;
  sopts.seed = opts.seed;
  sopts.threads = opts.threads;
  const SphereMinResult min = minimize_on_sphere(n, value, sopts);

  LocalConditionReport report;
  report.mode = "heuristic";
  report.tol = opts.tol;
  report.min_sigma = min.min_value;
  report.argmin_y = min.argmin;
  report.evaluations = min.evaluations;
  report.holds = min.min_value > opts.tol ? Holds::True : Holds::False;
  if (report.holds == Holds::False) {
    const Mat m = boundary_matrix_from_jet(jet, min.argmin);
    report.witness = witness_from_sigma(sigma_info(m), m, n);
  }
  return report;
}

LocalConditionReport certify_local_condition(const PolyMap& f, const Vec& a,
                                             const CertifyOptions& opts) {
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  if (a.size() != n) throw std::invalid_argument("certify_local_condition: dimension mismatch");
  if (n > 4) throw std::invalid_argument("certify_local_condition: supports n <= 4");
  if (!(opts.mesh > 0.0)) throw std::invalid_argument("certify_local_condition: mesh must be > 0");
  if (N < 2 * n + 1) return structural_failure(f, a, opts.tol, "certified");

  const Jet3 jet = f.jet3(a);
  // Lipschitz constant of y -> boundary matrix in spectral norm on the
  // sphere: the middle block is 1-homogeneous in y and the last column's
  // increment telescopes into three multilinear terms.
  const double lipschitz =
      operator_norm_estimate(jet.d2) + 3.0 * operator_norm_estimate(jet.d3);
  const auto value = [&](const Vec& y) {
    return sigma_min_only(boundary_matrix_from_jet(jet, y));
  };
  const NetScanResult net = scan_sphere_net(n, opts.mesh, opts.budget, value, opts.threads);

  LocalConditionReport report;
  report.mode = "certified";
  report.tol = opts.tol;
  report.min_sigma = net.min_value;
  report.argmin_y = net.argmin;
  report.mesh = net.mesh;
  report.lipschitz = lipschitz;
  report.evaluations = net.points;
  if (net.min_value - lipschitz * net.mesh > 0.0) {
    report.holds = Holds::True;
    return report;
  }
  if (auto w = kernel_witness(f, a, net.argmin, 1e-8); w && w->residual < 1e-8) {
    report.holds = Holds::False;
    report.witness = w;
    return report;
  }
  report.holds = Holds::Unknown;
  report.reason = "net minimum within Lipschitz slack and no confirmed witness";
  return report;
}

}  // namespace skewcheck
