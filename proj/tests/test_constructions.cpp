#include <doctest.h>

#include "skewcheck/constructions.hpp"
#include "skewcheck/local_condition.hpp"
#include "test_helpers.hpp"

using namespace skewcheck;

TEST_SUITE_BEGIN("constructions");

TEST_CASE("convolution bilinear basis values") {
  const SymMultiMap b2 = conv_bilinear(2);
  Vec e00(4), e01(4);
  e00 << 0, 1, 0, 0;
  e01 << 0, 0, 1, 0;
  CHECK((b2.apply(Vec::Unit(2, 0), Vec::Unit(2, 0)) - e00).norm() == 0.0);
  CHECK((b2.apply(Vec::Unit(2, 0), Vec::Unit(2, 1)) - e01).norm() == 0.0);
  const SymMultiMap b1 = conv_bilinear(1);
  auto rng = rng_stream(91, 0);
  const Vec x = gaussian_vector(rng, 1);
  const Vec y = gaussian_vector(rng, 1);
  const Vec v = b1.apply(x, y);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == x[0] * y[0]);
}

TEST_CASE("convolution bilinear is exactly symmetric") {
  const SymMultiMap b = conv_bilinear(3);
  auto rng = rng_stream(92, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec x = gaussian_vector(rng, 3);
    const Vec y = gaussian_vector(rng, 3);
    CHECK((b.apply(x, y) - b.apply(y, x)).norm() == 0.0);
  }
}

TEST_CASE("diagonal trilinear structure") {
  const SymMultiMap c = diag_trilinear(2);
  Vec e111(4);
  e111 << 0, 1, 0, 0;
  CHECK((c.apply(Vec::Unit(2, 1), Vec::Unit(2, 1), Vec::Unit(2, 1)) - e111).norm() == 0.0);
  CHECK(c.apply(Vec::Unit(2, 0), Vec::Unit(2, 0), Vec::Unit(2, 1)).norm() == 0.0);
  auto rng = rng_stream(93, 0);
  for (int n : {1, 2, 4}) {
    const SymMultiMap cn = diag_trilinear(n);
    const Vec x = gaussian_vector(rng, n);
    const Vec v = cn.apply(x, x, x);
    CHECK(v.tail(n).norm() == 0.0);
  }
}

TEST_CASE("cubic construction instantiates the curve (x, x^3/6, x^2/2)") {
  const PolyMap f = skew_cubic(1);
  const PolyMap expect = testing::twisted_cubic();
  auto rng = rng_stream(94, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec x = gaussian_vector(rng, 1);
    CHECK((f.eval(x) - expect.eval(x)).norm() <= 1e-15);
  }
}

TEST_CASE("cubic construction derivatives at 0 are the defining blocks") {
  for (int n : {1, 2, 3}) {
    const PolyMap f = skew_cubic(n);
    const Mat d1 = f.jacobian(Vec::Zero(n));
    Mat expect1 = Mat::Zero(3 * n, n);
    expect1.topRows(n) = Mat::Identity(n, n);
    CHECK((d1 - expect1).norm() == 0.0);
    const Mat d2 = f.derivative(Vec::Zero(n), 2).coeffs();
    Mat expect2 = Mat::Zero(3 * n, conv_bilinear(n).coeffs().cols());
    expect2.bottomRows(2 * n) = conv_bilinear(n).coeffs();
    CHECK((d2 - expect2).norm() == 0.0);
    const Mat d3 = f.derivative(Vec::Zero(n), 3).coeffs();
    Mat expect3 = Mat::Zero(3 * n, diag_trilinear(n).coeffs().cols());
    expect3.bottomRows(2 * n) = diag_trilinear(n).coeffs();
    CHECK((d3 - expect3).norm() == 0.0);
  }
}

TEST_CASE("cubic construction satisfies the third-order condition at 0") {
  for (int n : {1, 2, 3, 4}) {
    const PolyMap f = skew_cubic(n);
    const LocalConditionReport rep = check_local_condition(f, Vec::Zero(n));
    CHECK(rep.holds == Holds::True);
  }
}

TEST_CASE("convolution nonsingularity: exact lowest-index argument") {
  for (int n : {1, 2, 3, 5}) {
    const ConvCheckReport rep = conv_nonsingular_check(n, "exact", 200);
    CHECK(rep.pass);
  }
  // Single surviving term for extreme indices.
  const SymMultiMap b = conv_bilinear(4);
  const Vec v = b.apply(Vec::Unit(4, 0), Vec::Unit(4, 3));
  CHECK(v[4] == 1.0);
  CHECK(v.norm() == 1.0);
  // Vacuous for a zero argument.
  CHECK(b.apply(Vec::Zero(4), Vec::Unit(4, 2)).norm() == 0.0);
}

TEST_CASE("convolution nonsingularity: sampled minimum stays positive") {
  const ConvCheckReport rep = conv_nonsingular_check(3, "sampled", 100000);
  CHECK(rep.pass);
  CHECK(rep.min_norm > 0.0);
}

TEST_CASE("triangular substitution oracle") {
  auto rng = rng_stream(95, 0);
  const Vec x = gaussian_vector(rng, 4);
  SUBCASE("zero solution completes the substitution") {
    const TriangularResult r = triangular_oracle(x, 1.0, Vec::Zero(4));
    CHECK(r.forced_zero);
    CHECK(r.contradiction_index == -1);
  }
  SUBCASE("first basis vector contradicts at index 0") {
    const TriangularResult r = triangular_oracle(x, 1.0, Vec::Unit(4, 0));
    CHECK_FALSE(r.forced_zero);
    CHECK(r.contradiction_index == 0);
  }
  SUBCASE("lambda = 0 is out of scope") {
    CHECK_THROWS_AS((void)triangular_oracle(x, 0.0, Vec::Zero(4)), std::domain_error);
  }
}

TEST_CASE("triangular oracle: nonzero y gives nonzero residual") {
  const int n = 3;
  const SymMultiMap b = conv_bilinear(n);
  const SymMultiMap c = diag_trilinear(n);
  auto rng = rng_stream(96, 0);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec x = gaussian_vector(rng, n);
    double lambda = uni(rng);
    if (lambda == 0.0) lambda = 1.0;
    Vec y = gaussian_vector(rng, n);
    if (y.norm() == 0.0) y = Vec::Unit(n, 0);
    const double residual = (b.apply(x, y) + lambda * c.apply(y, y, y)).norm();
    CHECK(residual > 0.0);
  }
}

TEST_CASE("triangular oracle agrees with a dense grid check") {
  const int n = 3;
  const SymMultiMap b = conv_bilinear(n);
  const SymMultiMap c = diag_trilinear(n);
  auto rng = rng_stream(97, 0);
  const Vec x = gaussian_vector(rng, n);
  const double lambda = 0.7;
  const int steps = 21;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      for (int k = 0; k < steps; ++k) {
        Vec y(3);
        y << -1.0 + 2.0 * i / (steps - 1), -1.0 + 2.0 * j / (steps - 1),
            -1.0 + 2.0 * k / (steps - 1);
        const double residual = (b.apply(x, y) + lambda * c.apply(y, y, y)).norm();
        const TriangularResult r = triangular_oracle(x, lambda, y);
        if (y.norm() == 0.0) {
          CHECK(r.forced_zero);
          CHECK(residual == 0.0);
        } else {
          CHECK_FALSE(r.forced_zero);
          CHECK(residual > 0.0);
        }
      }
    }
  }
}

TEST_CASE("appendix bilinear: defining values at n = 2") {
  const SymMultiMap b = appendix_bilinear(2);
  Vec e2(4), e4(4);
  e2 << 0, 1, 0, 0;
  e4 << 0, 0, 0, 1;
  CHECK((b.apply(Vec::Unit(2, 0), Vec::Unit(2, 0)) - e2).norm() == 0.0);
  CHECK((b.apply(Vec::Unit(2, 1), Vec::Unit(2, 1)) - e4).norm() == 0.0);
  CHECK(b.apply(Vec::Unit(2, 0), Vec::Unit(2, 1)).norm() == 0.0);
}

TEST_CASE("appendix bilinear: images of the extreme slices") {
  const int n = 4;
  const SymMultiMap b = appendix_bilinear(n);
  // Image of b(e_1, .) is spanned by outputs 2..n (1-based).
  for (int j = 0; j < n; ++j) {
    const Vec v = b.apply(Vec::Unit(n, 0), Vec::Unit(n, j));
    for (int out = 0; out < 2 * n; ++out) {
      if (v[out] != 0.0) {
        CHECK(out >= 1);
        CHECK(out <= n - 1);
      }
    }
  }
  // Image of b(e_n, .) is spanned by outputs n+2..2n (1-based).
  for (int j = 0; j < n; ++j) {
    const Vec v = b.apply(Vec::Unit(n, n - 1), Vec::Unit(n, j));
    for (int out = 0; out < 2 * n; ++out) {
      if (v[out] != 0.0) {
        CHECK(out >= n + 1);
        CHECK(out <= 2 * n - 1);
      }
    }
  }
  CHECK(b.apply(Vec::Unit(n, 0), Vec::Unit(n, n - 1)).norm() == 0.0);
}

TEST_CASE("appendix triple: kernel at the failing direction") {
  const PolyMap f = appendix_triple(2, 6);
  const Mat m = boundary_matrix(f, Vec::Zero(2), Vec::Unit(2, 0));
  Vec kernel(5);
  kernel << 0, 0, 0, 1, 0;  // (v1, v2, lambda) = (0, e_n, 0)
  CHECK((m * kernel).norm() == 0.0);
}

TEST_CASE("appendix triple: trilinear column is orthogonal to the bilinear image") {
  const int n = 3;
  const PolyMap f = appendix_triple(n, 3 * n);
  const Vec tcol = f.part(3).apply(Vec::Unit(n, 0), Vec::Unit(n, 0), Vec::Unit(n, 0));
  const Mat bcoeffs = f.part(2).coeffs();
  CHECK((bcoeffs.transpose() * tcol).norm() == 0.0);
}

TEST_CASE("appendix triple: trailing coordinates vanish when N > 3n") {
  const PolyMap f = appendix_triple(2, 8);
  auto rng = rng_stream(98, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec x = gaussian_vector(rng, 2);
    CHECK(f.eval(x).tail(2).norm() == 0.0);
  }
  CHECK_THROWS_AS((void)appendix_triple(2, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)appendix_bilinear(1), std::invalid_argument);
}

TEST_SUITE_END();
