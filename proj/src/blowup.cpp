#include "skewcheck/blowup.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skewcheck/rng.hpp"
#include "skewcheck/skewness.hpp"

namespace skewcheck {

BlowupPoint::BlowupPoint(Vec a_, Vec y_, double t_)
    : a(std::move(a_)), y(std::move(y_)), t(t_) {
  if (a.size() != y.size()) throw std::invalid_argument("BlowupPoint: dimension mismatch");
  if (std::abs(y.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("BlowupPoint: direction must be a unit vector");
  if (!(t >= 0.0)) throw std::invalid_argument("BlowupPoint: separation must be >= 0");
}

std::pair<Vec, Vec> blowup_to_pair(const BlowupPoint& bp) {
  return {bp.a, bp.a + bp.t * bp.y};
}

namespace {

using LD = long double;

// Degree-1 coefficient block of the partial map m(y, ..., y, .) built from a
// degree-j block contracted j-1 times.
MatT<LD> repeated_contract(int n, int j, MatT<LD> block, const VecT<LD>& y, int times) {
  for (int s = 0; s < times; ++s) {
    block = detail::contract_coeffs<LD, LD>(n, j - s, block, y);
  }
  return block;
}

}  // namespace

Mat blowup_matrix(const PolyMap& f, const BlowupPoint& bp) {
  const int n = f.domain_dim();
  const int N = f.codomain_dim();
  if (bp.a.size() != n) throw std::invalid_argument("blowup_matrix: dimension mismatch");
  const VecT<LD> a = bp.a.cast<LD>();
  const VecT<LD> y = bp.y.cast<LD>();
  const auto parts = f.shifted_part_coeffs<LD>(a);
  const int d = f.degree();

  MatT<LD> out = MatT<LD>::Zero(N, 2 * n + 1);
  out.block(0, 0, N, n) = parts[0];

  // Middle block: D^2 f_a(y, .) + (t/2) D^3 f_a(y, y, .) + (t^2/6) D^4 f_a(y, y, y, .).
  const LD t = static_cast<LD>(bp.t);
  if (d >= 2) out.block(0, n, N, n) += repeated_contract(n, 2, parts[1], y, 1);
  if (d >= 3) out.block(0, n, N, n) += (t / 2.0L) * repeated_contract(n, 3, parts[2], y, 2);
  if (d >= 4) out.block(0, n, N, n) += (t * t / 6.0L) * repeated_contract(n, 4, parts[3], y, 3);

  // Last column: D^3 f_a(y,y,y) + (t/2) D^4 f_a(y,y,y,y).
  VecT<LD> last = VecT<LD>::Zero(N);
  if (d >= 3) last += repeated_contract(n, 3, parts[2], y, 2) * y;
  if (d >= 4) last += (t / 2.0L) * (repeated_contract(n, 4, parts[3], y, 3) * y);
  out.col(2 * n) = last;

  return out.cast<double>();
}

MatT<long double> pair_to_blowup_basis_ld(const Vec& y, double t) {
  if (!(t > 0.0)) throw std::domain_error("pair_to_blowup_basis: requires t > 0");
  const int n = static_cast<int>(y.size());
  const LD tl = static_cast<LD>(t);
  MatT<LD> b = MatT<LD>::Zero(2 * n + 1, 2 * n + 1);
  b.block(0, 0, n, n) = MatT<LD>::Identity(n, n);
  b.block(0, n, n, n) = -MatT<LD>::Identity(n, n) / tl;
  b.block(n, n, n, n) = MatT<LD>::Identity(n, n) / tl;
  const VecT<LD> yl = y.cast<LD>();
  b.block(0, 2 * n, n, 1) = (6.0L / (tl * tl)) * yl;
  b.block(n, 2 * n, n, 1) = (6.0L / (tl * tl)) * yl;
  b(2 * n, 2 * n) = -12.0L / (tl * tl * tl);
  return b;
}

Mat pair_to_blowup_basis(const Vec& y, double t) {
  return pair_to_blowup_basis_ld(y, t).cast<double>();
}

Mat blowup_matrix_via_pair(const PolyMap& f, const BlowupPoint& bp) {
  if (!(bp.t > 0.0)) throw std::domain_error("blowup_matrix_via_pair: requires t > 0");
  // The second point a + t y must stay unrounded: the change of basis
  // amplifies a perturbation of it by ~ 12/t^3.
  const VecT<LD> p = bp.a.cast<LD>();
  const VecT<LD> q = p + static_cast<LD>(bp.t) * bp.y.cast<LD>();
  const MatT<LD> pair = pair_matrix_ld(f, p, q);
  const MatT<LD> basis = pair_to_blowup_basis_ld(bp.y, bp.t);
  return (pair * basis).cast<double>();
}

RemainderScalingReport remainder_scaling_check(const PolyMap& f, const Vec& a, int k,
                                               int trials, std::uint64_t seed) {
  if (k < 1 || k > 3) throw std::invalid_argument("remainder_scaling_check: need 1 <= k <= 3");
  RemainderScalingReport report;
  report.trials = trials;
  report.zero_remainder = f.degree() <= k;
  if (report.zero_remainder) {
    report.pass = true;
    report.min_slope = report.max_slope = 1.0;
    report.max_linear_factor = 1.0;
    return report;
  }
  const std::vector<double> ts = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  report.min_slope = 1e300;
  report.max_slope = -1e300;
  report.max_linear_factor = 1.0;
  bool pass = true;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(trial));
    const Vec y = random_unit_vector(rng, f.domain_dim());
    std::vector<double> ratios;
    ratios.reserve(ts.size());
    double lo = 1e300, hi = 0.0;
    for (double t : ts) {
      const double ratio = f.taylor_tail(a, t * y, k).norm() / std::pow(t, k);
      ratios.push_back(ratio);
      if (ratio > 0.0) {
        lo = std::min(lo, ratio / t);
        hi = std::max(hi, ratio / t);
      }
    }
    if (hi == 0.0) continue;  // direction with identically vanishing remainder
    // Least-squares slope of log(ratio) against log(t).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ratios[i] <= 0.0) continue;
      const double lx = std::log(ts[i]);
      const double ly = std::log(ratios[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++m;
    }
    if (m < 2) continue;
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    report.min_slope = std::min(report.min_slope, slope);
    report.max_slope = std::max(report.max_slope, slope);
    report.max_linear_factor = std::max(report.max_linear_factor, hi / lo);
    if (slope < 0.9 || slope > 1.1 || hi / lo > 10.0) pass = false;
  }
  report.pass = pass;
  return report;
}

}  // namespace skewcheck
