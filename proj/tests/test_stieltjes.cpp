#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mopkit/stieltjes.hpp"

using namespace mopkit;

namespace {
using R = Rational;
using MP = MatPoly<R>;
R Q(long a, long b = 1) { return R(a, b); }

template <class T>
MatPoly<T> scal(std::vector<T> c) {
  std::vector<Matrix<T>> m;
  for (auto& x : c) m.push_back(Matrix<T>::Constant(1, 1, x));
  return MatPoly<T>(1, 1, m);
}

MatrixMeasure<R> atoms(int n) {
  std::vector<R> x;
  std::vector<Matrix<R>> w;
  for (int k = 0; k < n; ++k) {
    x.push_back(Q(k, 3));
    w.push_back(Matrix<R>::Constant(1, 1, Q(k % 4 + 1, 2)));
  }
  return discrete_measure(x, w);
}
}  // namespace

TEST_CASE("Stieltjes function of a single atom") {
  auto mu = discrete_measure<R>({Q(1, 2)}, {Matrix<R>::Constant(1, 1, Q(1))});
  CHECK(stieltjes_eval(mu, Q(3)).F(0, 0) == Q(1) / (Q(3) - Q(1, 2)));
  CHECK_THROWS_AS(stieltjes_eval(mu, Q(1, 2)), PoleOnSupport);
}

TEST_CASE("Stieltjes function of Lebesgue measure at z = 2 is ln 2") {
  PrecisionGuard g(256);
  MatrixMeasure<BigFloat> mu(1, 1);
  mu.entry(0, 0).parts.push_back(lebesgue01<BigFloat>());
  BigFloat F = stieltjes_eval(mu, BigFloat(2)).F(0, 0);
  CHECK(bmp::abs(F - bmp::log(BigFloat(2))) < BigFloat("1e-70"));
}

TEST_CASE("block 1x2 discrete Stieltjes function is componentwise") {
  std::vector<Matrix<R>> w{(Matrix<R>(1, 2) << 1, 2).finished(), (Matrix<R>(1, 2) << 3, -1).finished()};
  auto mu = discrete_measure<R>({Q(0), Q(1)}, w);
  Matrix<R> F = stieltjes_eval(mu, Q(2)).F;
  CHECK(F(0, 0) == Q(1, 2) + Q(3));
  CHECK(F(0, 1) == Q(1) - Q(1));
}

TEST_CASE("Christoffel by x on Lebesgue gives F~ = z F - 1") {
  PrecisionGuard g(256);
  using B = BigFloat;
  MatrixMeasure<B> mu(1, 1);
  mu.entry(0, 0).parts.push_back(lebesgue01<B>());
  auto b = make_bundle<B>(scal<B>({B(0), B(1)}), MatPoly<B>::identity(1), Orientation::Standard, {},
                          std::vector<Eigenvalue<B>>{{B(0), 1}}, std::vector<Eigenvalue<B>>{});
  auto mut = perturbed_measure(b, mu);
  auto rep = stieltjes_transform_check(b, mu, mut, {B(2), B(-3), B(5)});
  CHECK(rep.S.is_zero());
  REQUIRE(rep.St.degree() == 0);
  CHECK(bmp::abs(rep.St.coeff(0)(0, 0) - 1) < B("1e-70"));
  B z(2);
  B Ft = stieltjes_eval(mut, z).F(0, 0);
  B F = stieltjes_eval(mu, z).F(0, 0);
  CHECK(bmp::abs(Ft - (z * F - 1)) < B("1e-70"));
  CHECK(rep.max() < B("1e-70"));
}

TEST_CASE("identity perturbation: equal functions, zero corrections") {
  auto mu = atoms(5);
  auto b = make_bundle(MP::identity(1), MP::identity(1));
  auto rep = stieltjes_transform_check(b, mu, perturbed_measure(b, mu), {Q(7), Q(-1, 3)});
  CHECK(rep.S.is_zero());
  CHECK(rep.St.is_zero());
  CHECK(rep.max() == 0);
}

TEST_CASE("scalar Geronimus with a mass: exact identity at z = 5 and degrees") {
  auto mu = atoms(7);
  MassTerm<R> ms{0, 0, 0, MP::constant(Matrix<R>::Constant(1, 1, Q(2, 7)))};
  auto b = make_bundle(MP::identity(1), scal<R>({Q(-5, 2), Q(1)}), Orientation::Standard, {ms});
  auto mut = perturbed_measure(b, mu);
  auto rep = stieltjes_transform_check(b, mu, mut, {Q(5), Q(-7, 2), Q(11, 5), Q(9), Q(-1, 7)});
  CHECK(rep.max() == 0);
  CHECK(rep.degrees_ok);
  CHECK(rep.S.degree() == 0);
  CHECK(rep.St.is_zero());
  // the mass shows up in F~ but not in the corrected identity
  R z = Q(5);
  R Ft = stieltjes_eval(mut, z).F(0, 0);
  R F = stieltjes_eval(mu, z).F(0, 0);
  CHECK(Ft == (F + rep.S(z)(0, 0)) / (z - Q(5, 2)));
}

TEST_CASE("2x2 Uvarov and dual orientation: exact identity") {
  std::vector<R> x;
  std::vector<Matrix<R>> w;
  for (int k = 0; k < 8; ++k) {
    x.push_back(Q(k - 3, 2));
    Matrix<R> m(2, 2);
    m << Q(1 + k % 2), Q(k % 3), Q(1 - k % 4), Q(2 + k % 5);
    w.push_back(m);
  }
  auto mu = discrete_measure(x, w);
  Matrix<R> L1(2, 2), L0(2, 2), R1(2, 2), R0(2, 2);
  L1 << 0, 0, 1, 0;
  L0 << Q(2), Q(1), Q(-1, 3), Q(1, 5);
  R1 << 0, 1, 0, 0;
  R0 << Q(1, 2), Q(2, 7), Q(1), Q(3);
  MP L(2, 2, {L0, L1}), Rp(2, 2, {R0, R1});
  std::vector<R> z{Q(10), Q(-9, 2), Q(13, 3), Q(-5), Q(7, 11)};
  {
    MassTerm<R> ms{0, 0, 0, MP(2, 1, {Matrix<R>((Matrix<R>(2, 1) << 1, -2).finished())})};
    auto b = make_bundle(L, Rp, Orientation::Standard, {ms});
    auto rep = stieltjes_transform_check(b, mu, perturbed_measure(b, mu), z);
    CHECK(rep.max() == 0);
    CHECK(rep.degrees_ok);
  }
  {
    MassTerm<R> ms{0, 0, 0, MP(1, 2, {Matrix<R>((Matrix<R>(1, 2) << 3, 1).finished())})};
    auto b = make_bundle(L, Rp, Orientation::Dual, {ms});
    auto rep = stieltjes_transform_check(b, mu, perturbed_measure(b, mu), z);
    CHECK(rep.max() == 0);
    CHECK(rep.degrees_ok);
  }
}
