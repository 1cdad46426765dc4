#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mopkit/moments.hpp"

using namespace mopkit;

namespace {
using R = Rational;
R Q(long a, long b = 1) { return R(a, b); }
}  // namespace

TEST_CASE("moment matrix of a 2x1 discrete measure has the interleaved layout") {
  Matrix<R> W0(2, 1), W1(2, 1);
  W0 << 1, 0;
  W1 << 2, 5;
  auto mu = discrete_measure<R>({Q(1), Q(3)}, {W0, W1});
  Matrix<R> M = build_moment_matrix(mu, 4);
  // M_{ij} = int x^{i/2 + j} d mu_{i%2, 0}
  CHECK(M(0, 0) == Q(3));
  CHECK(M(1, 0) == Q(5));
  CHECK(M(2, 1) == Q(1) + 2 * 9);
  CHECK(M(3, 2) == 5 * 27);
}

TEST_CASE("block shift matrices") {
  Matrix<R> S = shift_matrix<R>(2, 5);
  CHECK(S(0, 2) == Q(1));
  CHECK(S(2, 4) == Q(1));
  CHECK(S.sum() == Q(3));
}

TEST_CASE("moment relation for a Christoffel perturbation vanishes on its window") {
  Matrix<R> W(1, 1);
  std::vector<R> nodes{Q(0), Q(1), Q(2), Q(4)};
  std::vector<Matrix<R>> Ws(4, Matrix<R>::Constant(1, 1, Q(1)));
  auto mu = discrete_measure(nodes, Ws);
  MatPoly<R> L(1, 1, {Matrix<R>::Constant(1, 1, Q(-3)), Matrix<R>::Constant(1, 1, Q(1))});
  MatPoly<R> I = MatPoly<R>::identity(1);
  auto mt = perturb_measure<R>(mu, L, I, {}, Orientation::Standard, {}, {});
  const int n = 6;
  auto res = moment_relation_residual(build_moment_matrix(mt, n), build_moment_matrix(mu, n), L, I,
                                      Orientation::Standard);
  CHECK(res.rows() == n - 1);
  CHECK(res.isZero());
}

TEST_CASE("moment relation window shrinks by the degrees") {
  auto w = moment_relation_window(12, 2, 3, 1, 2);
  CHECK(w.rows == 10);
  CHECK(w.cols == 6);
}
