#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mopkit/uvarov.hpp"

using namespace mopkit;

namespace {
using R = Rational;
using MP = MatPoly<R>;
R Q(long a, long b = 1) { return R(a, b); }

MP scal(std::vector<R> c) {
  std::vector<Matrix<R>> m;
  for (auto& x : c) m.push_back(Matrix<R>::Constant(1, 1, x));
  return MP(1, 1, m);
}

MatrixMeasure<R> lebesgue() {
  MatrixMeasure<R> mu(1, 1);
  mu.entry(0, 0).parts.push_back(lebesgue01<R>());
  return mu;
}

MatrixMeasure<R> atoms(int n) {
  std::vector<R> x;
  std::vector<Matrix<R>> w;
  for (int k = 0; k < n; ++k) {
    x.push_back(Q(k, 2));
    w.push_back(Matrix<R>::Constant(1, 1, Q(k % 3 + 1)));
  }
  return discrete_measure(x, w);
}

void check_equal(const MP& a, const MP& b) {
  CHECK(a == b);
}
}  // namespace

TEST_CASE("scalar Christoffel on Lebesgue: ledger, tau, Omega and both families") {
  auto mu = lebesgue();
  auto fam = family_from_measure(mu, 9);
  auto b = make_bundle(scal({Q(-2), Q(1)}), MP::identity(1));
  StandardEngine<R> e(mu, fam, b);
  CHECK(e.ledger_B(1)(0) == Q(3, 2));
  CHECK(e.tau(1) == Q(3, 2));
  CHECK(e.tau(2) == Q(13, 6));
  CHECK(e.omega_row(0)(0) == Q(-3, 2));
  CHECK(e.omega_row(0)(1) == Q(1));
  CHECK(e.typeII(0) == MP::identity(1));
  auto mut = perturbed_measure(b, mu);
  auto ft = oracle_direct(mut, 8, Normalization::BMonic);
  for (Eigen::Index n = 0; n < 8; ++n) check_equal(e.typeII(n), ft.B[n]);
  for (Eigen::Index m = 0; m < 7; ++m) check_equal(e.typeI(m), ft.A[m]);
}

TEST_CASE("scalar Geronimus with a mass: I ledger sign and families") {
  auto mu = atoms(11);
  auto fam = family_from_measure(mu, 11);
  MassTerm<R> ms{0, 0, 0, MP::constant(Matrix<R>::Constant(1, 1, Q(3, 5)))};
  auto b = make_bundle(MP::identity(1), scal({Q(-2, 3), Q(1)}), Orientation::Standard, {ms});
  StandardEngine<R> e(mu, fam, b);
  for (int i = 0; i < 5; ++i) {
    CHECK(e.ledger_W(i)(0) == Q(3, 5) * fam.B[i](Q(2, 3))(0, 0));
    CHECK(e.ledger_I(i, 0) == -(e.ledger_D(i)(0) - e.ledger_W(i)(0)));
  }
  auto mut = perturbed_measure(b, mu);
  auto ft = oracle_direct(mut, 11, Normalization::BMonic);
  for (Eigen::Index n = 0; n <= e.last_row(); ++n) check_equal(e.typeII(n), ft.B[n]);
  for (Eigen::Index m = 1; m <= e.last_row(); ++m) check_equal(e.typeI(m), ft.A[m]);
  auto rep = connection_residuals(e, mut, ft, {Q(7), Q(-5, 3)});
  CHECK(rep.max() == 0);
}

TEST_CASE("2x2 mixed case with M_L = M_R = 1") {
  std::vector<R> x;
  std::vector<Matrix<R>> w;
  for (int k = 0; k < 10; ++k) {
    x.push_back(Q(k - 4, 2));
    Matrix<R> m(2, 2);
    m << Q(1 + k % 2), Q(k % 3), Q(1 - k % 4), Q(2 + k * k % 5);
    w.push_back(m);
  }
  auto mu = discrete_measure(x, w);
  auto fam = family_from_measure(mu, 14);
  // L = [[1, 0], [x - 1/3, 1]] ... needs the C2.2 band; use L = [[0, 1], [1, 0]] x + [[a, b], [c, d]] form:
  Matrix<R> L1(2, 2), L0(2, 2), R1(2, 2), R0(2, 2);
  L1 << 0, 0, 1, 0;          // transpose of the C2.1 pattern, defect 1
  L0 << Q(2), Q(1), Q(-1, 3), Q(1, 5);
  // det L = -(x - 1/3) * ... choose L0(0,1) = 1 so that det L = 2 * (1/5) - (x - 1/3)
  R1 << 0, 1, 0, 0;
  R0 << Q(1, 2), Q(2, 7), Q(1), Q(3);
  MP L(2, 2, {L0, L1}), Rp(2, 2, {R0, R1});
  MassTerm<R> ms{0, 0, 0, MP(2, 1, {Matrix<R>((Matrix<R>(2, 1) << 1, -2).finished())})};
  auto b = make_bundle(L, Rp, Orientation::Standard, {ms});
  CHECK(b.ML == 1);
  CHECK(b.MR == 1);
  StandardEngine<R> e(mu, fam, b);
  auto mut = perturbed_measure(b, mu);
  auto ft = oracle_direct(mut, 14, Normalization::BMonic);
  for (Eigen::Index n = 0; n <= e.last_row(); ++n) check_equal(e.typeII(n), ft.B[n]);
  for (Eigen::Index m = 0; m <= e.last_row() - 1; ++m) check_equal(e.typeI(m), ft.A[m]);
  auto rep = connection_residuals(e, mut, ft, {Q(9), Q(-11, 3)});
  CHECK(rep.max() == 0);
  for (Eigen::Index n = 1; n <= 6; ++n) {
    auto kr = kernel_residuals(e, mut, ft, n, Q(5, 7), Q(-9, 4));
    CHECK(kr.plain == 0);
    CHECK(kr.mixed_D == 0);
    CHECK(kr.mixed_C == 0);
  }
  // Omega from the two factor products agrees with the solved rows
  auto g = gauss_borel(build_moment_matrix(mu, 14), 2, 2);
  auto gt = gauss_borel(build_moment_matrix(mut, 14), 2, 2);
  auto W = e.omega(8);
  Matrix<R> Wl = omega_from_left_factors(gt, g, L, 8);
  Matrix<R> Wr = omega_from_right_factors(gt, g, Rp, 8);
  CHECK(Matrix<R>(Wl.leftCols(9)) == W.dense(8, 9));
  CHECK(Matrix<R>(Wr.topRows(8)) == W.dense(8, 8));
}

TEST_CASE("dual orientation agrees with the direct dual oracle") {
  std::vector<R> x;
  std::vector<Matrix<R>> w;
  for (int k = 0; k < 12; ++k) {
    x.push_back(Q(k - 5, 2));
    Matrix<R> m(1, 2);
    m << Q(1 + k % 3), Q(k % 4 - 1);
    w.push_back(m);
  }
  auto mu = discrete_measure(x, w);
  auto fam = family_from_measure(mu, 12);
  MP L = scal({Q(1, 3), Q(-1)});  // (1/3 - x): Geronimus side in the dual orientation
  Matrix<R> R1(2, 2), R0(2, 2);
  R1 << 0, 1, 0, 0;
  R0 << Q(1, 2), Q(2, 7), Q(1), Q(3);
  MP Rp(2, 2, {R0, R1});
  MassTerm<R> ms{0, 0, 0, MP(1, 2, {Matrix<R>((Matrix<R>(1, 2) << 2, -1).finished())})};
  auto b = make_bundle(L, Rp, Orientation::Dual, {ms});
  DualEngine<R> e(mu, fam, b);
  auto mut = perturbed_measure(b, mu);
  auto ft = oracle_direct(mut, 12, Normalization::AMonic);
  for (Eigen::Index n = 0; n <= e.last_row(); ++n) check_equal(e.typeI(n), ft.A[n]);
  for (Eigen::Index m = 0; m < e.last_row(); ++m) check_equal(e.typeII(m), ft.B[m]);
}

TEST_CASE("engineered tau = 0 and existence diagnostics") {
  auto mu = atoms(11);
  auto fam = family_from_measure(mu, 11);
  // scalar Geronimus at 2/3 with mass m such that D_1 - m B_1 = 0 at rho
  auto Rp = scal({Q(-2, 3), Q(1)});
  auto probe = make_bundle(MP::identity(1), Rp);
  StandardEngine<R> e0(mu, fam, probe);
  R m = e0.ledger_D(1)(0) / fam.B[1](Q(2, 3))(0, 0);
  MassTerm<R> ms{0, 0, 0, MP::constant(Matrix<R>::Constant(1, 1, m))};
  auto b = make_bundle(MP::identity(1), Rp, Orientation::Standard, {ms});
  StandardEngine<R> e(mu, fam, b);
  CHECK(e.tau(2) == 0);
  CHECK_THROWS_AS(e.omega_row(2), SingularSystem);
  auto rep = existence_report(e, perturbed_measure(b, mu), 8);
  CHECK_FALSE(rep.all_tau_nonzero);
  CHECK(rep.necessity_holds);
  CHECK_FALSE(rep.perturbed_lu_ok);
  CHECK(rep.lu_index <= 2);
}

TEST_CASE("identity perturbation leaves everything unchanged") {
  auto mu = atoms(8);
  auto fam = family_from_measure(mu, 8);
  auto b = make_bundle(MP::identity(1), MP::identity(1));
  StandardEngine<R> e(mu, fam, b);
  for (Eigen::Index n = 0; n < 8; ++n) {
    CHECK(e.tau(n) == 1);
    CHECK(e.typeII(n) == fam.B[n]);
    CHECK(e.typeI(n) == fam.A[n]);
  }
  auto W = e.omega(4);
  CHECK(W.dense(4, 4) == Matrix<R>::Identity(4, 4));
  auto c = omega_commutator_window(W, 2);
  CHECK(c.upper.size() == 0);
  CHECK(c.lower.size() == 0);
}
