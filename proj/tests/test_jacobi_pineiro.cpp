#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "json.hpp"
#include "mopkit/jacobi_pineiro.hpp"
#include "quadrature.hpp"

using namespace mopkit;

namespace {
using R = Rational;
using B = BigFloat;

R Q(long a, long b = 1) { return R(a, b); }

B rel(const MatPoly<B>& a, const MatPoly<B>& b) {
  const B s = std::max(a.max_abs_coeff(), b.max_abs_coeff());
  const MatPoly<B> d = a - b;
  return d.is_zero() ? B(0) : B(d.max_abs_coeff() / s);
}

B rel(const B& a, const B& b) {
  const B s = std::max({bmp::abs(a), bmp::abs(b), B(1)});
  return bmp::abs(a - b) / s;
}

MatPoly<B> mp(const Poly<B>& p) { return detail::as_matpoly(p); }

const B tol40("1e-40");

JPParams<B> params(long b_num, long b_den) {
  return {{B(0), B(1) / 2, B(1) / 3}, B(b_num) / b_den};
}
}  // namespace

TEST_CASE("step line indices") {
  CHECK(jp_stepline(0) == StepIndex{0, 0, 0});
  CHECK(jp_stepline(4) == StepIndex{2, 1, 1});
  CHECK(jp_stepline(5) == StepIndex{2, 2, 1});
  for (int n = 0; n < 30; ++n) {
    auto s = jp_stepline(n);
    CHECK(s[0] + s[1] + s[2] == n);
    CHECK(s[0] >= s[1]);
    CHECK(s[1] >= s[2]);
    CHECK(s[0] - s[2] <= 1);
  }
}

TEST_CASE("moments: exact values, exact ratio and the float Beta route") {
  JPParams<R> z{{Q(0), Q(1, 2), Q(1, 3)}, Q(0)};
  CHECK(jp_moment(z, 0, 0) == Q(1));
  CHECK(jp_moment(z, 0, 1) == Q(1, 2));
  JPParams<R> p{{Q(1, 4), Q(2, 3), Q(-1, 2)}, Q(3)};
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 8; ++k) CHECK(jp_moment(p, a, k + 1) / jp_moment(p, a, k) == jp_moment_ratio(p, a, k));
  CHECK_THROWS_AS(jp_moment(JPParams<R>{{Q(0), Q(1, 2), Q(1, 3)}, Q(1, 2)}, 0, 0), BackendUnsupported);

  PrecisionGuard g(256);
  JPParams<B> f{{B(1) / 4, B(2) / 3, B(-1) / 2}, B(3)};
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 5; ++k) CHECK(rel(jp_moment(f, a, k), convert<B>(jp_moment(p, a, k))) < B("1e-70"));
}

TEST_CASE("AT condition") {
  CHECK_THROWS_AS(jp_validate(JPParams<R>{{Q(0), Q(1), Q(1, 3)}, Q(1)}), ATViolation);
  CHECK_THROWS_AS(jp_validate(JPParams<R>{{Q(-1), Q(1, 2), Q(1, 3)}, Q(1)}), ATViolation);
  CHECK_NOTHROW(jp_validate(JPParams<R>{{Q(0), Q(1, 2), Q(1, 3)}, Q(1, 2)}));
}

TEST_CASE("degree one closed forms against the monic orthogonality oracle") {
  // P_1 = x - m_1/m_0 for the first weight: -(alpha_1 + 1)/(alpha_1 + beta + 2).
  JPParams<R> p{{Q(1, 5), Q(1, 2), Q(1, 3)}, Q(7, 2)};
  Poly<R> P1 = jp_typeII(p, 1);
  CHECK(P1 == Poly<R>({-(Q(6, 5)) / (Q(1, 5) + Q(7, 2) + 2), Q(1)}));
  CHECK(jp_typeII(p, 0) == Poly<R>({Q(1)}));

  PrecisionGuard g(512);
  JPParams<B> f{{B(1) / 5, B(1) / 2, B(1) / 3}, B(7) / 2};
  // type I with one coefficient: <B_0, A> = 1 fixes A = 1 / m_0 in the first component.
  MatPoly<B> A1 = jp_typeI(f, 1);
  CHECK(A1.degree() == 0);
  CHECK(rel(A1.coeff(0)(0, 0), B(1) / jp_moment(f, 0, 0)) < tol40);
  CHECK(A1.coeff(0)(1, 0) == 0);
  CHECK(A1.coeff(0)(2, 0) == 0);
}

TEST_CASE("closed forms equal the Gauss-Borel family at 512 bits") {
  PrecisionGuard g(512);
  for (auto p : {params(1, 2), params(5, 2)}) {
    auto mu = jp_measure(p);
    auto lu = family_from_measure(mu, 11);
    auto cf = jp_family(p, 11);
    for (int n = 0; n <= 10; ++n) {
      CHECK(rel(cf.B[n], lu.B[n]) < tol40);
      // type I display with n+1 coefficients carries the <B_n, A_n> = 1 scale already: the factor is 1
      CHECK(rel(cf.A[n], lu.A[n]) < tol40);
    }
    CHECK(pairing_check(cf, mu) < tol40);
  }
}

TEST_CASE("endpoint values: direct summation decides the P_n(0) display") {
  PrecisionGuard g(512);
  auto p = params(3, 2);
  for (int n = 1; n <= 8; ++n) {
    auto fixed = jp_boundary_values(p, n);
    auto printed = jp_boundary_values(p, n, DisplayVariant::AsPrinted);
    Poly<B> P = jp_typeII(p, n);
    MatPoly<B> A = jp_typeI(p, n);
    CHECK(rel(fixed.P0, P(B(0))) < tol40);
    CHECK(rel(fixed.P1, P(B(1))) < tol40);
    CHECK(rel(printed.P1, P(B(1))) < tol40);
    if (n >= 2) CHECK_FALSE(rel(printed.P0, P(B(0))) < tol40);
    for (int a = 0; a < 3; ++a) {
      CHECK(rel(fixed.PI0[a], A(B(0))(a, 0)) < tol40);
      CHECK(rel(fixed.PI1[a], A(B(1))(a, 0)) < tol40);
    }
  }
}

TEST_CASE("Cauchy values at 1 against quadrature and the engine's Beta route") {
  PrecisionGuard g(512);
  auto p = params(3, 2);
  auto mu = jp_measure(p);
  for (int n = 1; n <= 5; ++n) {
    auto fixed = jp_boundary_values(p, n);
    auto printed = jp_boundary_values(p, n, DisplayVariant::AsPrinted);
    Poly<B> P = jp_typeII(p, n);
    MatPoly<B> A = jp_typeI(p, n);
    B c1(0);
    for (int a = 0; a < 3; ++a) {
      const B q = testing::jacobi_quad(P, p.alpha[a], B(p.beta - 1));
      CHECK(rel(fixed.D1[a], q) < tol40);
      CHECK_FALSE(rel(printed.D1[a], q) < tol40);
      CHECK(rel(cauchy_row(mp(P), mu, B(1))(a), q) < tol40);
      c1 += testing::jacobi_quad(A.entry(a, 0), p.alpha[a], B(p.beta - 1));
    }
    CHECK(rel(fixed.C1, c1) < tol40);
    CHECK(rel(printed.C1, c1) < tol40);
  }
  // alpha_1 = 0: the unshifted Pochhammer (0)_beta vanishes and the printed value is not finite
  auto printed = jp_boundary_values(params(1, 2), 1, DisplayVariant::AsPrinted);
  CHECK_FALSE(bmp::isfinite(printed.D1[0]));
}

TEST_CASE("perturbation 1 at c = 1, d = 0 shifts the parameters") {
  PrecisionGuard g(512);
  auto p = params(5, 2);
  auto mu = jp_measure(p);
  auto fam = jp_family(p, 12);
  auto b = jp_bundle(JPPerturbation::First, B(1), B(0));
  CHECK(b.ML == 1);
  CHECK(b.MR == 2);
  DualEngine<B> e(mu, fam, b, Normalization::BMonic);
  auto ft = oracle_direct(perturbed_measure(b, mu), 10, Normalization::BMonic);
  auto sh = jp_first_shift(p);
  for (int n = 0; n <= 8; ++n) {
    CHECK(rel(e.typeII(n), ft.B[n]) < tol40);
    CHECK(rel(e.typeII(n), mp(jp_typeII(sh, n))) < tol40);
    CHECK(rel(e.typeI(n), ft.A[n]) < tol40);
  }
  JPLedger<B> L{&mu, &fam, B(1), B(0), MatPoly<B>()};
  for (int n = 1; n <= 7; ++n) {
    CHECK(rel(mp(jp_first_typeII_display(L, n - 1)), ft.B[n]) < tol40);
    // the type I display lands on the LU index n with factor -1
    CHECK(rel(jp_first_typeI_display(L, n), MatPoly<B>(ft.A[n] * B(-1))) < tol40);
  }
}

TEST_CASE("perturbation 1 with a mass and off-endpoint c, d") {
  PrecisionGuard g(512);
  auto p = params(5, 2);
  auto mu = jp_measure(p);
  auto fam = jp_family(p, 12);
  const B c(2), d(B(-1) / 2);
  Matrix<B> x0(1, 3);
  x0 << B(1) / 3, B(-1) / 2, B(2);
  const MatPoly<B> xi = MatPoly<B>::constant(x0);
  auto b = jp_bundle(JPPerturbation::First, c, d, xi);
  DualEngine<B> e(mu, fam, b, Normalization::BMonic);
  auto ft = oracle_direct(perturbed_measure(b, mu), 10, Normalization::BMonic);
  JPLedger<B> L{&mu, &fam, c, d, xi};
  for (int n = 1; n <= 7; ++n) {
    CHECK(rel(e.typeII(n), ft.B[n]) < tol40);
    CHECK(rel(mp(jp_first_typeII_display(L, n - 1)), ft.B[n]) < tol40);
    CHECK(rel(jp_first_typeI_display(L, n), MatPoly<B>(ft.A[n] * B(-1))) < tol40);
  }
}

TEST_CASE("perturbation 2: engine, displays and no parameter shift") {
  PrecisionGuard g(512);
  auto p = params(5, 2);
  auto mu = jp_measure(p);
  auto fam = jp_family(p, 12);
  auto b = jp_bundle(JPPerturbation::Second, B(1), B(0));
  StandardEngine<B> e(mu, fam, b);
  auto ft = oracle_direct(perturbed_measure(b, mu), 10, Normalization::BMonic);
  JPLedger<B> L{&mu, &fam, B(1), B(0), MatPoly<B>()};
  for (int n = 0; n <= 7; ++n) {
    CHECK(rel(e.typeII(n), ft.B[n]) < tol40);
    if (n >= 1) CHECK(rel(e.typeI(n), ft.A[n]) < tol40);
    if (n >= 2) CHECK(rel(mp(jp_second_typeII_display(L, n)), ft.B[n]) < tol40);
    if (n >= 3) CHECK(rel(jp_second_typeI_display(L, n), ft.A[n - 1]) < tol40);
  }
  // The candidate shifts (identity, the perturbation 1 map) already fail at n = 2.
  for (auto q : {p, jp_first_shift(p)}) CHECK(rel(ft.B[2], mp(jp_typeII(q, 2))) > B("1e-6"));
}

TEST_CASE("perturbation 2: a mass changes only the W columns") {
  PrecisionGuard g(256);
  auto p = params(5, 2);
  auto mu = jp_measure(p);
  auto fam = jp_family(p, 10);
  Matrix<B> x0(1, 2);
  x0 << B(1) / 3, B(-2);
  const MatPoly<B> xi = MatPoly<B>::constant(x0);
  StandardEngine<B> e0(mu, fam, jp_bundle(JPPerturbation::Second, B(2), B(-1) / 2));
  StandardEngine<B> e1(mu, fam, jp_bundle(JPPerturbation::Second, B(2), B(-1) / 2, xi));
  const B small = ScalarTraits<B>::tol();
  for (int k = 0; k < 8; ++k) {
    CHECK(max_abs(Matrix<B>(e0.ledger_B(k) - e1.ledger_B(k))) <= small);
    CHECK(max_abs(Matrix<B>(e0.ledger_D(k) - e1.ledger_D(k))) <= small);
    CHECK(max_abs(Matrix<B>(e0.ledger_W(k))) == 0);
    CHECK(max_abs(Matrix<B>(e1.ledger_W(k))) > small);
  }
  auto b1 = jp_bundle(JPPerturbation::Second, B(2), B(-1) / 2, xi);
  auto ft = oracle_direct(perturbed_measure(b1, mu), 8, Normalization::BMonic);
  JPLedger<B> L{&mu, &fam, B(2), B(-1) / 2, xi};
  for (int n = 3; n <= 6; ++n) {
    CHECK(rel(e1.typeII(n), ft.B[n]) < small);
    CHECK(rel(mp(jp_second_typeII_display(L, n)), ft.B[n]) < small);
    CHECK(rel(jp_second_typeI_display(L, n), ft.A[n - 1]) < small);
  }
}

TEST_CASE("golden coefficient tables") {
  PrecisionGuard g(512);
  JPParams<B> p = params(1, 2);
  const std::string path = std::string(MOPKIT_SOURCE_DIR) + "/tests/golden/jp_tables.json";
  auto table = [&] {
    nlohmann::json j;
    j["params"] = {"0", "1/2", "1/3", "1/2"};
    j["precision_bits"] = 512;
    for (int n = 0; n <= 8; ++n) {
      nlohmann::json row;
      row["n"] = n;
      Poly<B> P = jp_typeII(p, n);
      for (int k = 0; k <= P.degree(); ++k) row["typeII"].push_back(P.coeff(k).str(60, std::ios_base::scientific));
      if (n >= 1) {
        MatPoly<B> A = jp_typeI(p, n);
        for (int a = 0; a < 3; ++a) {
          nlohmann::json comp = nlohmann::json::array();
          for (int k = 0; k <= A.degree(); ++k) comp.push_back(A.coeff(k)(a, 0).str(60, std::ios_base::scientific));
          row["typeI"].push_back(comp);
        }
      }
      j["rows"].push_back(row);
    }
    return j;
  };
  if (std::getenv("MOPKIT_WRITE_GOLDEN")) {
    std::ofstream(path) << table().dump(1) << "\n";
  }
  std::ifstream in(path);
  REQUIRE(in.good());
  const nlohmann::json want = nlohmann::json::parse(in);
  const nlohmann::json got = table();
  REQUIRE(want["rows"].size() == got["rows"].size());
  for (std::size_t r = 0; r < got["rows"].size(); ++r) {
    const auto& a = got["rows"][r];
    const auto& w = want["rows"][r];
    REQUIRE(a["typeII"].size() == w["typeII"].size());
    for (std::size_t k = 0; k < a["typeII"].size(); ++k)
      CHECK(rel(B(a["typeII"][k].get<std::string>()), B(w["typeII"][k].get<std::string>())) < tol40);
    if (a.contains("typeI"))
      for (int c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < a["typeI"][c].size(); ++k)
          CHECK(rel(B(a["typeI"][c][k].get<std::string>()), B(w["typeI"][c][k].get<std::string>())) < tol40);
  }
}
