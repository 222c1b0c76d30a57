#include <doctest.h>

#include "skewcheck/blowup.hpp"
#include "skewcheck/skewness.hpp"
#include "skewcheck/svd_utils.hpp"
#include "test_helpers.hpp"

using namespace skewcheck;
using skewcheck::testing::random_polymap;

TEST_SUITE_BEGIN("blowup");

TEST_CASE("blow-up point maps to the expected pair") {
  const Vec a = Vec::Zero(2);
  SUBCASE("zero separation lands on the diagonal") {
    const auto [p, q] = blowup_to_pair(BlowupPoint(a, Vec::Unit(2, 0), 0.0));
    CHECK((p - q).norm() == 0.0);
  }
  SUBCASE("separation 2 along the first axis") {
    const auto [p, q] = blowup_to_pair(BlowupPoint(a, Vec::Unit(2, 0), 2.0));
    CHECK((q - 2.0 * Vec::Unit(2, 0)).norm() == 0.0);
  }
  SUBCASE("unit direction gives separation t") {
    auto rng = rng_stream(31, 0);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec base = gaussian_vector(rng, 3);
      const Vec y = random_unit_vector(rng, 3);
      std::uniform_real_distribution<double> uni(0.1, 2.0);
      const double t = uni(rng);
      const auto [p, q] = blowup_to_pair(BlowupPoint(base, y, t));
      CHECK((q - p).norm() == doctest::Approx(t).epsilon(1e-14));
    }
  }
  SUBCASE("validation rejects non-unit directions and negative separations") {
    CHECK_THROWS_AS(BlowupPoint(a, 2.0 * Vec::Unit(2, 0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BlowupPoint(a, Vec::Unit(2, 0), -1.0), std::invalid_argument);
  }
}

TEST_CASE("blow-up matrix boundary value for the twisted cubic") {
  const PolyMap f = testing::twisted_cubic();
  const Mat m = blowup_matrix(f, BlowupPoint(Vec::Zero(1), Vec::Ones(1), 0.0));
  Mat expect(3, 3);
  expect << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((m - expect).norm() == 0.0);
}

TEST_CASE("blow-up matrix first block is the Jacobian at every separation") {
  const PolyMap f = random_polymap(2, 6, 3, 41);
  auto rng = rng_stream(32, 0);
  const Vec a = gaussian_vector(rng, 2);
  const Mat jac = f.jacobian(a);
  for (double t : {0.0, 0.5}) {
    const Mat m = blowup_matrix(f, BlowupPoint(a, random_unit_vector(rng, 2), t));
    CHECK((m.leftCols(2) - jac).norm() <= 1e-14 * jac.norm());
  }
}

TEST_CASE("blow-up matrix is continuous across t = 0 with linear rate") {
  const PolyMap f = random_polymap(2, 6, 3, 43);
  auto rng = rng_stream(33, 0);
  const Vec a = gaussian_vector(rng, 2);
  const Vec y = random_unit_vector(rng, 2);
  const Mat at0 = blowup_matrix(f, BlowupPoint(a, y, 0.0));
  const Mat small = blowup_matrix(f, BlowupPoint(a, y, 1e-4));
  CHECK((small - at0).norm() <= 1e-3 * at0.norm());
  // Linear decay of the seam gap for polynomial maps.
  const Mat larger = blowup_matrix(f, BlowupPoint(a, y, 1e-3));
  const double ratio = (larger - at0).norm() / (small - at0).norm();
  CHECK(ratio == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("pair-to-blowup change of basis: explicit 3x3 instance") {
  Vec y = Vec::Ones(1);
  const Mat b = pair_to_blowup_basis(y, 1.0);
  Mat expect(3, 3);
  expect << 1, -1, 6, 0, 1, 6, 0, 0, -12;
  CHECK((b - expect).norm() == 0.0);
  CHECK(b.determinant() == doctest::Approx(-12.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)pair_to_blowup_basis(y, 0.0), std::domain_error);
}

TEST_CASE("pair-to-blowup change of basis: determinant -12 / t^{n+3}") {
  auto rng = rng_stream(34, 0);
  for (int n : {1, 2, 3}) {
    const Vec y = random_unit_vector(rng, n);
    std::uniform_real_distribution<double> uni(0.2, 1.5);
    const double t = uni(rng);
    const Mat b = pair_to_blowup_basis(y, t);
    const double expect = -12.0 / std::pow(t, n + 3);
    CHECK(b.determinant() == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("blow-up matrix equals the pair-matrix route after the change of basis") {
  auto rng = rng_stream(35, 0);
  for (int inst = 0; inst < 25; ++inst) {
    const PolyMap f = random_polymap(2, 6, 3, 500 + static_cast<std::uint64_t>(inst));
    const Vec a = gaussian_vector(rng, 2);
    const Vec y = random_unit_vector(rng, 2);
    std::uniform_real_distribution<double> uni(-3.0, 0.0);
    const double t = std::pow(10.0, uni(rng));
    const BlowupPoint bp(a, y, t);
    const Mat direct = blowup_matrix(f, bp);
    const Mat via_pair = blowup_matrix_via_pair(f, bp);
    CHECK((direct - via_pair).norm() <= 1e-10 * direct.norm());
    const auto [p, q] = blowup_to_pair(bp);
    const PairMatrix pm = pair_matrix(f, p, q);
    // The raw pair matrix's smallest singular value carries a t^3 factor, so
    // its rank is read just above the double-precision noise floor.
    CHECK(numerical_rank(direct, 1e-9) == numerical_rank(pm.m, 1e-14));
  }
}

TEST_CASE("blow-up coordinates invert the pair map off the diagonal") {
  auto rng = rng_stream(36, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec a = gaussian_vector(rng, 3);
    const Vec y = random_unit_vector(rng, 3);
    std::uniform_real_distribution<double> uni(0.05, 2.0);
    const double t = uni(rng);
    const auto [p, q] = blowup_to_pair(BlowupPoint(a, y, t));
    const double t_back = (q - p).norm();
    const Vec y_back = (q - p) / t_back;
    CHECK((p - a).norm() == 0.0);
    CHECK(t_back == doctest::Approx(t).epsilon(1e-13));
    CHECK((y_back - y).norm() <= 1e-13);
  }
}

TEST_CASE("remainder scaling: cubic map at order 3 has zero remainder") {
  const PolyMap f = random_polymap(2, 4, 3, 51);
  const RemainderScalingReport rep = remainder_scaling_check(f, Vec::Zero(2), 3, 5);
  CHECK(rep.pass);
  CHECK(rep.zero_remainder);
}

TEST_CASE("remainder scaling: x^4 has ratio exactly |x|") {
  Mat c4(1, 1);
  c4 << 24.0;  // eval includes 1/4!, so this is x -> x^4
  std::vector<SymMultiMap> parts{SymMultiMap::zero(1, 1, 1), SymMultiMap::zero(1, 1, 2),
                                 SymMultiMap::zero(1, 1, 3), SymMultiMap(1, 1, 4, c4)};
  const PolyMap f(1, 1, Vec::Zero(1), std::move(parts));
  for (double t : {1e-1, 1e-3, 1e-6}) {
    const double ratio = f.taylor_tail(Vec::Zero(1), t * Vec::Ones(1), 3).norm() /
                         std::pow(t, 3);
    CHECK(ratio == doctest::Approx(t).epsilon(1e-14));
  }
  const RemainderScalingReport rep = remainder_scaling_check(f, Vec::Zero(1), 3, 3);
  CHECK(rep.pass);
  CHECK_FALSE(rep.zero_remainder);
}

TEST_CASE("remainder scaling: random quartics have unit log-log slope") {
  for (int inst = 0; inst < 5; ++inst) {
    const PolyMap f = random_polymap(2, 3, 4, 600 + static_cast<std::uint64_t>(inst));
    auto rng = rng_stream(37, static_cast<std::uint64_t>(inst));
    const RemainderScalingReport rep =
        remainder_scaling_check(f, gaussian_vector(rng, 2), 3, 10);
    CHECK(rep.pass);
    CHECK(rep.min_slope >= 0.9);
    CHECK(rep.max_slope <= 1.1);
  }
}

TEST_SUITE_END();
