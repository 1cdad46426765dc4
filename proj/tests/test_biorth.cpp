#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mopkit/biorth.hpp"

using namespace mopkit;

namespace {
using R = Rational;
R Q(long a, long b = 1) { return R(a, b); }

MatrixMeasure<R> lebesgue_scalar() {
  MatrixMeasure<R> mu(1, 1);
  mu.entry(0, 0).parts.push_back(lebesgue01<R>());
  return mu;
}

// a 2x1 measure with distinct supports so the mixed moment matrix is regular
MatrixMeasure<R> mixed_2x1() {
  std::vector<R> nodes;
  std::vector<Matrix<R>> W;
  for (int k = 0; k < 9; ++k) {
    nodes.push_back(Q(k, 2));
    Matrix<R> w(2, 1);
    w << Q(1 + k % 3), Q(k * k - 3 * k + 1, 4);
    W.push_back(w);
  }
  return discrete_measure(nodes, W);
}
}  // namespace

TEST_CASE("B-monic family of the Lebesgue measure is the shifted Legendre family") {
  auto f = family_from_measure(lebesgue_scalar(), 4);
  // B_2 = x^2 - x + 1/6, H_2 = 1/180
  CHECK(f.B[2].coeff(0)(0, 0) == Q(1, 6));
  CHECK(f.B[2].coeff(1)(0, 0) == Q(-1));
  CHECK(f.B[2].coeff(2)(0, 0) == Q(1));
  CHECK(f.H(2) == Q(1, 180));
  CHECK(pairing_check(f, lebesgue_scalar()) == 0);
}

TEST_CASE("mixed type family is biorthogonal in both normalizations") {
  auto mu = mixed_2x1();
  auto f = family_from_measure(mu, 7);
  CHECK(pairing_check(f, mu) == 0);
  auto g = family_from_measure(mu, 7, Normalization::AMonic);
  CHECK(pairing_check(g, mu) == 0);
  auto h = renormalize(f, Normalization::AMonic);
  for (int k = 0; k < 7; ++k) {
    CHECK(h.B[k] == g.B[k]);
    CHECK(h.A[k] == g.A[k]);
  }
  // B-monic: the last coefficient in the X_[2] basis is 1
  for (int k = 0; k < 7; ++k) CHECK(coeffs_of_row(f.B[k], k + 1)(k) == Q(1));
}

TEST_CASE("kernel reproduces polynomials in the span") {
  auto mu = mixed_2x1();
  auto f = family_from_measure(mu, 7);
  // A-side: any column p with coefficients in X_[1] of length <= 7 lies in span{A_0..A_6}
  MatPoly<R> P(1, 1, {Matrix<R>::Constant(1, 1, Q(2)), Matrix<R>::Constant(1, 1, Q(-1)),
                      Matrix<R>::Constant(1, 1, Q(3))});
  CHECK(kernel_project_right(f, 6, mu, P) == P);
  MatPoly<R> B = row_from_coeffs<R>((RowVector<R>(5) << 1, 2, 0, -1, 4).finished(), 2);
  CHECK(kernel_project_left(f, 6, mu, B) == B);
}

TEST_CASE("mixed kernels: sum form against integral form") {
  auto mu = mixed_2x1();
  auto f = family_from_measure(mu, 6);
  const R x = Q(11), y = Q(-7, 3);
  CHECK(mixed_kernel_C(f, mu, 5, x, y) == mixed_kernel_C_integral(f, mu, 5, x, y));
  CHECK(mixed_kernel_D(f, mu, 5, y, x) == mixed_kernel_D_integral(f, mu, 5, y, x));
}

TEST_CASE("singular moment matrix reports the failing index") {
  std::vector<Matrix<R>> W{Matrix<R>::Constant(1, 1, Q(1)), Matrix<R>::Constant(1, 1, Q(1))};
  auto mu = discrete_measure<R>({Q(0), Q(1)}, W);
  try {
    family_from_measure(mu, 4);
    FAIL("expected SingularLeadingMinor");
  } catch (const SingularLeadingMinor& e) {
    CHECK(e.index() == 2);
  }
}

TEST_CASE("float Cauchy transform of a family: closed form against series") {
  PrecisionGuard g(200);
  MatrixMeasure<BigFloat> mu(1, 1);
  mu.entry(0, 0).parts.push_back(lebesgue01<BigFloat>());
  auto f = family_from_measure(mu, 5);
  const BigFloat z(4);
  for (int n = 0; n < 5; ++n) {
    auto a = cauchy_C(f, mu, n, z);
    auto b = cauchy_C_series(f, mu, n, z, 160);
    CHECK(bmp::abs(a(0) - b(0)) < BigFloat("1e-50"));
  }
}
