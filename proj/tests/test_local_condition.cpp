#include <doctest.h>

#include "skewcheck/blowup.hpp"
#include "skewcheck/constructions.hpp"
#include "skewcheck/local_condition.hpp"
#include "skewcheck/skewness.hpp"
#include "skewcheck/sphere.hpp"
#include "skewcheck/svd_utils.hpp"
#include "test_helpers.hpp"

using namespace skewcheck;
using skewcheck::testing::random_polymap;

namespace {

// Residual of the defining equation at an arbitrary tuple.
double condition_residual(const Jet3& jet, const Vec& v1, const Vec& v2, const Vec& v3,
                          double lambda) {
  return (jet.d1 * v1 + jet.d2.apply(v2, v3) + lambda * jet.d3.apply(v3, v3, v3)).norm();
}

}  // namespace

TEST_SUITE_BEGIN("local_condition");

TEST_CASE("boundary matrix of the one-dimensional cubic construction") {
  const PolyMap f = skew_cubic(1);
  const Mat m = boundary_matrix(f, Vec::Zero(1), Vec::Ones(1));
  Mat expect(3, 3);
  expect << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((m - expect).norm() == 0.0);
  CHECK(sigma_min_only(m) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("boundary matrix of a linear map has rank at most n") {
  auto rng = rng_stream(61, 0);
  std::vector<SymMultiMap> parts{testing::random_multimap(2, 6, 1, rng)};
  const PolyMap f(2, 6, Vec::Zero(6), std::move(parts));
  const Mat m = boundary_matrix(f, Vec::Zero(2), Vec::Unit(2, 0));
  CHECK(m.rightCols(3).norm() == 0.0);
  CHECK(numerical_rank(m, 1e-9) <= 2);
  const LocalConditionReport rep = check_local_condition(f, Vec::Zero(2));
  CHECK(rep.holds == Holds::False);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->v1.norm() <= 1e-9);
}

TEST_CASE("boundary matrix agrees with the blow-up matrix at t = 0") {
  const PolyMap f = random_polymap(2, 6, 3, 71);
  auto rng = rng_stream(62, 0);
  const Vec a = gaussian_vector(rng, 2);
  const Vec y = random_unit_vector(rng, 2);
  const Mat lhs = boundary_matrix(f, a, y);
  const Mat rhs = blowup_matrix(f, BlowupPoint(a, y, 0.0));
  CHECK((lhs - rhs).norm() == 0.0);
}

TEST_CASE("boundary matrix rejects non-unit directions") {
  const PolyMap f = skew_cubic(2);
  CHECK_THROWS_AS((void)boundary_matrix(f, Vec::Zero(2), 2.0 * Vec::Unit(2, 0)),
                  std::invalid_argument);
}

TEST_CASE("boundary blocks scale with the expected homogeneity") {
  const PolyMap f = random_polymap(2, 6, 3, 73);
  const Jet3 jet = f.jet3(Vec::Zero(2));
  auto rng = rng_stream(63, 0);
  const Vec y = gaussian_vector(rng, 2);
  const Mat mid1 = jet.d2.contract(y).as_matrix();
  const Mat mid2 = jet.d2.contract(2.0 * y).as_matrix();
  CHECK((mid2 - 2.0 * mid1).norm() <= 1e-13 * mid1.norm());
  const Vec last1 = jet.d3.apply(y, y, y);
  const Vec last2 = jet.d3.apply(2.0 * y, 2.0 * y, 2.0 * y);
  CHECK((last2 - 8.0 * last1).norm() <= 1e-13 * last1.norm());
}

TEST_CASE("heuristic check holds for the cubic construction") {
  for (int n : {1, 2, 3}) {
    const PolyMap f = skew_cubic(n);
    const LocalConditionReport rep = check_local_condition(f, Vec::Zero(n));
    CHECK(rep.holds == Holds::True);
    CHECK(rep.min_sigma > 0.0);
  }
}

TEST_CASE("heuristic check fails when the bilinear block vanishes") {
  // Quadratic part identically zero leaves (0, v2, 0) in the kernel.
  auto rng = rng_stream(64, 0);
  std::vector<SymMultiMap> parts{testing::random_multimap(2, 6, 1, rng),
                                 SymMultiMap::zero(2, 6, 2),
                                 testing::random_multimap(2, 6, 3, rng)};
  const PolyMap f(2, 6, Vec::Zero(6), std::move(parts));
  const LocalConditionReport rep = check_local_condition(f, Vec::Zero(2));
  CHECK(rep.holds == Holds::False);
  CHECK(rep.min_sigma <= 1e-12);
}

TEST_CASE("heuristic check on the appendix triple locates the failure direction") {
  const PolyMap f = appendix_triple(2, 6);
  const LocalConditionReport rep = check_local_condition(f, Vec::Zero(2));
  CHECK(rep.holds == Holds::False);
  CHECK(std::abs(std::abs(rep.argmin_y[0]) - 1.0) <= 1e-2);
  REQUIRE(rep.witness.has_value());
  // Witness proportional to (0, e_n, 0): second v2 coordinate carries it all.
  Vec w(5);
  w << rep.witness->v1[0], rep.witness->v1[1], rep.witness->v2[0], rep.witness->v2[1],
      rep.witness->lambda;
  w.normalize();
  Vec axis = Vec::Zero(5);
  axis[3] = 1.0;
  CHECK((w - w.dot(axis) * axis).norm() <= 1e-6);
}

TEST_CASE("structural failure when the codomain is too small") {
  const PolyMap f = random_polymap(2, 4, 3, 79);
  const LocalConditionReport rep = check_local_condition(f, Vec::Zero(2));
  CHECK(rep.holds == Holds::False);
  CHECK(rep.reason == "N < 2n+1");
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->residual <= 1e-10);
}

TEST_CASE("kernel witness: appendix triple at the failing direction") {
  const PolyMap f = appendix_triple(2, 6);
  const auto w = kernel_witness(f, Vec::Zero(2), Vec::Unit(2, 0));
  REQUIRE(w.has_value());
  CHECK(w->v1.norm() <= 1e-12);
  CHECK(std::abs(w->lambda) <= 1e-12);
  CHECK(std::abs(std::abs(w->v2[1]) - 1.0) <= 1e-12);
  CHECK(w->residual <= 10.0 * std::max(w->sigma_min, 1e-300));
}

TEST_CASE("kernel witness: full-rank direction yields none") {
  const PolyMap f = skew_cubic(2);
  CHECK_FALSE(kernel_witness(f, Vec::Zero(2), Vec::Unit(2, 0)).has_value());
}

TEST_CASE("homogeneity reduction to the unit sphere") {
  const PolyMap f = random_polymap(2, 6, 3, 83);
  const Jet3 jet = f.jet3(Vec::Zero(2));
  auto rng = rng_stream(65, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec v1 = gaussian_vector(rng, 2);
    const Vec v2 = gaussian_vector(rng, 2);
    const Vec v3 = gaussian_vector(rng, 2);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double lambda = uni(rng);
    const double s = v3.norm();
    const double lhs = condition_residual(jet, v1, v2, v3, lambda);
    const double rhs = condition_residual(jet, v1, s * v2, v3 / s, s * s * s * lambda);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, lhs));
  }
}

TEST_CASE("sphere minimum is invariant under direction sign flips") {
  const PolyMap f = random_polymap(2, 6, 3, 89);
  const Jet3 jet = f.jet3(Vec::Zero(2));
  auto rng = rng_stream(66, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec y = random_unit_vector(rng, 2);
    const double plus = sigma_min_only(boundary_matrix_from_jet(jet, y));
    const double minus = sigma_min_only(boundary_matrix_from_jet(jet, -y));
    CHECK(std::abs(plus - minus) <= 1e-12 * std::max(1.0, plus));
  }
}

TEST_CASE("certified mode: S^0 net certifies the one-dimensional construction") {
  const PolyMap f = skew_cubic(1);
  CertifyOptions opts;
  opts.mesh = 0.5;
  const LocalConditionReport rep = certify_local_condition(f, Vec::Zero(1), opts);
  CHECK(rep.holds == Holds::True);
  CHECK(rep.mesh == 0.0);
  CHECK(rep.min_sigma == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("certified mode: circle net certifies the planar construction") {
  const PolyMap f = skew_cubic(2);
  CertifyOptions opts;
  opts.mesh = 1e-3;
  const LocalConditionReport rep = certify_local_condition(f, Vec::Zero(2), opts);
  CHECK(rep.holds == Holds::True);
  CHECK(rep.min_sigma - rep.lipschitz * rep.mesh > 0.0);
  // Cross-check against the heuristic estimate.
  const LocalConditionReport heur = check_local_condition(f, Vec::Zero(2));
  CHECK(heur.holds == Holds::True);
  CHECK(rep.min_sigma == doctest::Approx(heur.min_sigma).epsilon(1e-3));
}

TEST_CASE("certified mode: appendix triple never certifies true") {
  const PolyMap f = appendix_triple(2, 6);
  CertifyOptions opts;
  opts.mesh = 2e-3;
  const LocalConditionReport rep = certify_local_condition(f, Vec::Zero(2), opts);
  CHECK(rep.holds == Holds::False);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->residual <= 1e-8);
}

TEST_CASE("certified mode: budget overrun raises the structured resource error") {
  const PolyMap f = skew_cubic(2);
  CertifyOptions opts;
  opts.mesh = 1e-6;
  opts.budget = 1000;
  CHECK_THROWS_AS((void)certify_local_condition(f, Vec::Zero(2), opts), NetBudgetError);
}

TEST_CASE("certified true implies heuristic true") {
  for (int inst = 0; inst < 5; ++inst) {
    const PolyMap f = random_polymap(2, 6, 3, 900 + static_cast<std::uint64_t>(inst));
    CertifyOptions copts;
    copts.mesh = 5e-3;
    const LocalConditionReport cert = certify_local_condition(f, Vec::Zero(2), copts);
    if (cert.holds != Holds::True) continue;
    const LocalConditionReport heur = check_local_condition(f, Vec::Zero(2));
    CHECK(heur.holds == Holds::True);
  }
}

TEST_CASE("holding at a point implies a passing sweep at some radius") {
  const PolyMap f = skew_cubic(2);
  const LocalConditionReport rep = check_local_condition(f, Vec::Zero(2));
  REQUIRE(rep.holds == Holds::True);
  double r = 0.5;
  bool passed = false;
  while (r >= 1e-6 && !passed) {
    SweepOptions opts;
    opts.r = r;
    opts.trials = 1000;
    opts.seed = 11;
    passed = sweep_neighborhood(f, Vec::Zero(2), opts).pass;
    if (!passed) r *= 0.5;
  }
  CHECK(passed);
}

TEST_SUITE_END();
