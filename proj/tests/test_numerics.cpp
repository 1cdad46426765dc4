#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mopkit/numerics.hpp"
#include "mopkit/poly.hpp"

using namespace mopkit;

namespace {
Rational Q(long a, long b = 1) { return Rational(a, b); }
}

TEST_CASE("rational parse and print round trip") {
  CHECK(to_string(parse_scalar<Rational>("6/4")) == "3/2");
  CHECK(parse_scalar<Rational>("0.125") == Q(1, 8));
  CHECK(parse_scalar<Rational>("-3e-2") == Q(-3, 100));
  CHECK(parse_scalar<Rational>("12") == Q(12));
  CHECK_THROWS(parse_scalar<Rational>("1/0"));
}

TEST_CASE("pochhammer, factorial, binomial") {
  CHECK(pochhammer(Q(1, 2), 3) == Q(15, 8));
  CHECK(pochhammer(Q(5), 0) == Q(1));
  CHECK(factorial<Rational>(6) == Q(720));
  CHECK(binomial<Rational>(7, 3) == Q(35));
  PrecisionGuard g(128);
  // Gamma(1/2)^2 = pi
  BigFloat s = gamma_fn(BigFloat("0.5"));
  CHECK(bmp::abs(s * s - boost::math::constants::pi<BigFloat>()) < BigFloat("1e-30"));
}

TEST_CASE("no-pivot LDU reproduces the matrix and flags the first singular minor") {
  Matrix<Rational> M(3, 3);
  M << 2, 1, 0, 4, 3, 1, 0, 1, 5;
  auto f = lu_nopivot(M);
  Matrix<Rational> back = f.L * f.D.asDiagonal() * f.U;
  CHECK(back == M);
  Matrix<Rational> S(2, 2);
  S << 0, 1, 1, 0;
  try {
    lu_nopivot(S);
    FAIL("expected SingularLeadingMinor");
  } catch (const SingularLeadingMinor& e) {
    CHECK(e.index() == 0);
  }
}

TEST_CASE("pivoted determinant, solve and nullspace") {
  Matrix<Rational> A(3, 3);
  A << 0, 1, 2, 1, 0, 3, 4, -3, 8;
  CHECK(determinant(A) == Q(-2));
  Vector<Rational> b(3);
  b << 1, 2, 3;
  Vector<Rational> x = solve_linear(A, b);
  CHECK(Vector<Rational>(A * x) == b);
  Matrix<Rational> B(2, 3);
  B << 1, 2, 3, 2, 4, 6;
  CHECK(rank(B) == 1);
  Matrix<Rational> N = nullspace(B);
  CHECK(N.cols() == 2);
  CHECK(max_abs(Matrix<Rational>(B * N)) == 0);
}

TEST_CASE("polynomial arithmetic") {
  Poly<Rational> p{Q(-1), Q(0), Q(1)};  // x^2 - 1
  auto [qq, r] = divmod(p, Poly<Rational>::linear_root(Q(1)));
  CHECK(r.is_zero());
  CHECK(qq == Poly<Rational>({Q(1), Q(1)}));
  CHECK(p(Q(3)) == Q(8));
  auto t = p.taylor(Q(1), 3);
  CHECK(t[0] == Q(0));
  CHECK(t[1] == Q(2));
  CHECK(t[2] == Q(1));
  CHECK_THROWS_AS(exact_div(p, Poly<Rational>::linear_root(Q(2))), NotDivisible);
  auto g = poly_gcd(p, Poly<Rational>({Q(-1), Q(1)}) * Poly<Rational>({Q(3), Q(1)}));
  CHECK(g == Poly<Rational>({Q(-1), Q(1)}));
}

TEST_CASE("float tolerance follows the working precision") {
  PrecisionGuard g(200);
  CHECK(ScalarTraits<BigFloat>::tol() == bmp::ldexp(BigFloat(1), -100));
  CHECK(ScalarTraits<BigFloat>::negligible(bmp::ldexp(BigFloat(1), -120)));
  CHECK_FALSE(ScalarTraits<BigFloat>::negligible(bmp::ldexp(BigFloat(1), -80)));
}
