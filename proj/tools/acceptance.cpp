// Acceptance runner: one PASS/FAIL line per criterion, exit status 0 iff every asserted criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "mopkit/jacobi_pineiro.hpp"
#include "mopkit/smith.hpp"
#include "mopkit/stieltjes.hpp"
#include "quadrature.hpp"
#include "random_cases.hpp"

using namespace mopkit;
using R = Rational;
using B = BigFloat;
using MP = MatPoly<R>;

namespace {

// Pinned thresholds.
constexpr int kRandomCases = 60;
constexpr int kJordanCases = 12;
constexpr int kSmithCases = 24;
constexpr int kProbes = 5;
constexpr Eigen::Index kMaxIndex = 8;
constexpr Eigen::Index kMaxJordanIndex = 6;
constexpr double kChristoffelBudget = 60.0;   // seconds
constexpr double kShiftBudget = 120.0;        // seconds
constexpr int kJPBits = 512;
const char* const kJPTol = "1e-40";
constexpr std::uint64_t kSeed = 20261015;

struct Line {
  int id;
  bool pass;
  std::string title, detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

MP column(const MP& P, Eigen::Index j) {
  std::vector<Matrix<R>> c;
  for (const auto& m : P.coeffs()) c.push_back(m.col(j));
  return MP(P.rows(), 1, std::move(c));
}

// Everything a case needs in the standard frame: dual problems are the standard problem on transposes.
struct Prepared {
  testing::RandomCase rc;
  MatrixMeasure<R> mut;
  Family<R> fam;
  std::optional<StandardEngine<R>> se;
  std::optional<DualEngine<R>> de;
  MatrixMeasure<R> mu_s, mut_s;
  Family<R> ft_s;

  const StandardEngine<R>& standard() const { return se ? *se : de->transposed(); }
};

Prepared prepare(testing::RandomCase rc) {
  Prepared pr;
  pr.rc = std::move(rc);
  pr.mut = perturbed_measure(pr.rc.b, pr.rc.mu);
  pr.fam = family_from_measure(pr.rc.mu, pr.rc.N);
  if (pr.rc.b.orientation == Orientation::Standard) {
    pr.se.emplace(pr.rc.mu, pr.fam, pr.rc.b);
    pr.mu_s = pr.rc.mu;
    pr.mut_s = pr.mut;
  } else {
    pr.de.emplace(pr.rc.mu, pr.fam, pr.rc.b);
    pr.mu_s = pr.rc.mu.transpose();
    pr.mut_s = pr.mut.transpose();
  }
  pr.ft_s = oracle_direct(pr.mut_s, pr.rc.N, Normalization::BMonic);
  return pr;
}

struct Tally {
  long compared = 0, mismatched = 0, outside_window = 0, nontrivial = 0;
};

// Engine families against the oracle of the perturbed measure, in the bundle's own orientation.
void compare_families(const Prepared& pr, Eigen::Index max_n, Tally& t) {
  const auto& b = pr.rc.b;
  if (b.orientation == Orientation::Standard) {
    const auto& e = *pr.se;
    const Family<R> ft = oracle_direct(pr.mut, pr.rc.N, Normalization::BMonic);
    for (Eigen::Index n = 0; n <= std::min(max_n, e.last_row()); ++n) {
      ++t.compared;
      if (!(e.typeII(n) == ft.B[n])) ++t.mismatched;
      if (!(ft.B[n] == pr.fam.B[n])) ++t.nontrivial;
      try {
        const MP a = e.typeI(n);
        ++t.compared;
        if (!(a == ft.A[n])) ++t.mismatched;
      } catch (const WindowError&) {
        ++t.outside_window;
      }
    }
  } else {
    const auto& e = *pr.de;
    const Family<R> ft = oracle_direct(pr.mut, pr.rc.N, Normalization::AMonic);
    const Family<R> fa = renormalize(pr.fam, Normalization::AMonic);
    for (Eigen::Index n = 0; n <= std::min(max_n, e.last_row()); ++n) {
      ++t.compared;
      if (!(e.typeI(n) == ft.A[n])) ++t.mismatched;
      if (!(ft.A[n] == fa.A[n])) ++t.nontrivial;
      try {
        const MP bb = e.typeII(n);
        ++t.compared;
        if (!(bb == ft.B[n])) ++t.mismatched;
      } catch (const WindowError&) {
        ++t.outside_window;
      }
    }
  }
}

std::vector<R> avoid_list(const Prepared& pr) {
  std::vector<R> a = pr.rc.nodes;
  for (const auto& s : pr.rc.b.specL) a.push_back(s.value);
  for (const auto& s : pr.rc.b.specR) a.push_back(s.value);
  return a;
}

// Crafted perturbations with one Jordan chain of length 2 on one side.
testing::RandomCase jordan_case(testing::Rng& g, int i) {
  const int shape = i % 4;  // 0: chain on R, 1: chain on L, 2: chain on R with x - c on L, 3: chain on L with x - c on R
  const bool dual = (i / 4) % 2 == 1;
  const int q = static_cast<int>(testing::uniform(g, 1, 2)), p = static_cast<int>(testing::uniform(g, 1, 2));
  testing::RandomCase rc;
  rc.mu = testing::random_discrete(g, q, p, 12, rc.nodes);
  const R rho = testing::off_grid(g, 7, 30);
  R other = rho;
  while (other == rho) other = testing::off_grid(g, 7, 30);
  auto chain2 = [&](int s, bool upper) {
    if (s == 1) {
      const Poly<R> f = Poly<R>::linear_root(rho) * Poly<R>::linear_root(rho);
      return MP(1, 1, {Matrix<R>::Constant(1, 1, f.coeff(0)), Matrix<R>::Constant(1, 1, f.coeff(1)),
                       Matrix<R>::Constant(1, 1, f.coeff(2))});
    }
    Matrix<R> c0 = Matrix<R>::Identity(2, 2) * R(-rho);
    if (upper) c0(0, 1) = 1;
    else c0(1, 0) = 1;
    return MP(2, 2, {c0, Matrix<R>(Matrix<R>::Identity(2, 2))});
  };
  auto linear = [&](int s) {
    return MP(s, s, {Matrix<R>(Matrix<R>::Identity(s, s) * R(-other)), Matrix<R>(Matrix<R>::Identity(s, s))});
  };
  MP L = MP::identity(q), Rp = MP::identity(p);
  if (shape == 0 || shape == 2) Rp = chain2(p, true);
  if (shape == 1 || shape == 3) L = chain2(q, false);
  if (shape == 2 && q == 1) L = linear(1);
  if (shape == 3 && p == 1) Rp = linear(1);
  const Orientation o = dual ? Orientation::Dual : Orientation::Standard;
  const MP& divided = dual ? L : Rp;
  std::vector<MassTerm<R>> masses;
  if (determinant(divided).degree() > 0 && i % 3 != 0) {
    auto spec = spectral_data(divided);
    const Eigen::Index rows = dual ? 1 : q, cols = dual ? p : 1;
    for (int pt = 0; pt < static_cast<int>(spec.size()); ++pt)
      for (int pos = 0; pos < static_cast<int>(spec[pt].right[0].size()); ++pos) {
        Matrix<R> m(rows, cols);
        for (Eigen::Index a = 0; a < rows; ++a)
          for (Eigen::Index c = 0; c < cols; ++c) m(a, c) = R(testing::uniform(g, -3, 3), 2);
        masses.push_back({pt, 0, pos, MP::constant(m)});
      }
  }
  rc.b = make_bundle(L, Rp, o, masses);
  rc.N = 12;
  rc.label = "jordan " + std::to_string(i);
  return rc;
}

int longest_chain(const PerturbationBundle<R>& b) {
  int m = 0;
  for (const auto* spec : {&b.specL, &b.specR})
    for (const auto& s : *spec)
      for (const auto& c : s.right) m = std::max(m, static_cast<int>(c.size()));
  return m;
}

// Random regular U D V with U unimodular of degree 1, V constant, D diagonal over a pool of two roots.
MP random_smith_input(testing::Rng& g, int s, std::vector<R>& roots) {
  roots = {testing::off_grid(g, 7, 30)};
  while (roots.size() < 2) {
    R r = testing::off_grid(g, 7, 30);
    if (r != roots[0]) roots.push_back(r);
  }
  MP D(s, s);
  for (int i = 0; i < s; ++i) {
    Poly<R> d({R(1)});
    const int deg = static_cast<int>(testing::uniform(g, 0, 2));
    for (int k = 0; k < deg; ++k) d = d * Poly<R>::linear_root(roots[testing::uniform(g, 0, 1)]);
    D.set_entry(i, i, d);
  }
  MP U = MP::identity(s), V = MP::identity(s);
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      U.set_entry(i, j, Poly<R>({R(testing::uniform(g, -2, 2)), R(testing::uniform(g, -1, 1))}));
      V.set_entry(j, i, Poly<R>({R(testing::uniform(g, -3, 3))}));
    }
  return U * D * V;
}

template <class F>
Line guarded(int id, const std::string& title, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {id, false, title, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  std::vector<Line> lines;
  testing::Rng g(kSeed);

  // Suite (1) cases are shared by criteria 1, 2, 3, 4, 6 and 10.
  std::vector<Prepared> cases;
  const auto t_prep = std::chrono::steady_clock::now();
  std::string prep_error;
  for (int i = 0; i < kRandomCases; ++i) {
    try {
      cases.push_back(prepare(testing::random_case(g, i)));
    } catch (const std::exception& e) {
      prep_error += "[case " + std::to_string(i) + ": " + e.what() + "] ";
    }
  }
  const double prep_seconds = seconds_since(t_prep);

  lines.push_back(guarded(1, "exact Christoffel-oracle equivalence", [&]() -> Line {
    const auto t0 = std::chrono::steady_clock::now();
    Tally t;
    int dual = 0;
    for (const auto& pr : cases) {
      compare_families(pr, kMaxIndex, t);
      dual += pr.rc.b.orientation == Orientation::Dual;
    }
    const double secs = prep_seconds + seconds_since(t0);
    std::ostringstream d;
    d << cases.size() << " cases (" << dual << " dual), " << t.compared << " family comparisons, " << t.mismatched
      << " mismatches, " << t.nontrivial << " perturbed families differ from the base, " << t.outside_window
      << " type I indices outside the window, " << secs << " s (budget " << kChristoffelBudget << " s)";
    if (!prep_error.empty()) d << "; setup errors " << prep_error;
    const bool ok = static_cast<int>(cases.size()) == kRandomCases && prep_error.empty() && t.mismatched == 0 &&
                    t.nontrivial > 0 && secs <= kChristoffelBudget;
    return {1, ok, "exact Christoffel-oracle equivalence", d.str()};
  }));

  lines.push_back(guarded(2, "connection residual suite", [&]() -> Line {
    R worst(0);
    long rows = 0, cols = 0;
    for (auto& pr : cases) {
      auto probes = testing::random_probes(g, 2, avoid_list(pr));
      auto rep = connection_residuals(pr.standard(), pr.mut_s, pr.ft_s, probes);
      worst = std::max(worst, rep.max());
      rows += rep.rows_checked;
      cols += rep.cols_checked;
    }
    std::ostringstream d;
    d << "max |residual| over Omega B - B~ L, A~ Omega - R A, moments, Cauchy C and D = " << to_string(worst) << " ("
      << rows << " rows, " << cols << " columns)";
    return {2, worst == 0 && rows > 0 && cols > 0, "connection residual suite", d.str()};
  }));

  // Existence reports feed criteria 3 and 10; engineered tau = 0 cases join them.
  struct ExistenceRow {
    bool tau, minors, lu, necessity;
  };
  std::vector<ExistenceRow> ex;
  std::string ex_error;
  for (auto& pr : cases) {
    auto r = existence_report(pr.standard(), pr.mut_s, pr.rc.N);
    ex.push_back({r.all_tau_nonzero, r.all_minors_nonzero, r.perturbed_lu_ok, r.necessity_holds});
  }
  int engineered = 0;
  for (int i = 0; i < 6; ++i) {
    try {
      std::vector<R> nodes;
      auto mu = testing::random_discrete(g, 1, 1, 12, nodes);
      const R rho = testing::off_grid(g, 7, 30);
      auto fam = family_from_measure(mu, 12);
      auto probe = make_bundle(MP::identity(1), MP(1, 1, {Matrix<R>::Constant(1, 1, -rho), Matrix<R>::Constant(1, 1, R(1))}));
      StandardEngine<R> e0(mu, fam, probe);
      // tau_k = D_k - W_k with W_k = m B_k(rho): kill it at k = 1 + i % 4
      const Eigen::Index k = 1 + i % 4;
      const R m = e0.ledger_D(k)(0) / fam.B[k](rho)(0, 0);
      auto b = make_bundle(MP::identity(1), probe.R, Orientation::Standard,
                           {{0, 0, 0, MP::constant(Matrix<R>::Constant(1, 1, m))}});
      StandardEngine<R> e(mu, fam, b);
      auto mut = perturbed_measure(b, mu);
      auto r = existence_report(e, mut, 12);
      ex.push_back({r.all_tau_nonzero, r.all_minors_nonzero, r.perturbed_lu_ok, r.necessity_holds});
      engineered += r.all_tau_nonzero ? 0 : 1;
    } catch (const std::exception& e) {
      ex_error += std::string("[engineered: ") + e.what() + "] ";
    }
  }

  lines.push_back(guarded(3, "necessity of tau != 0", [&]() -> Line {
    int violations = 0, lu_ok = 0;
    for (const auto& r : ex) {
      violations += r.necessity ? 0 : 1;
      lu_ok += r.lu ? 1 : 0;
    }
    std::ostringstream d;
    d << ex.size() << " cases (" << engineered << " with an engineered zero tau), perturbed LU through N in " << lu_ok
      << ", necessity violations " << violations;
    if (!ex_error.empty()) d << "; errors " << ex_error;
    return {3, violations == 0 && ex_error.empty() && engineered > 0, "necessity of tau != 0", d.str()};
  }));

  lines.push_back(guarded(4, "kernel identities", [&]() -> Line {
    long checks = 0, failures = 0, at_bound = 0;
    for (auto& pr : cases) {
      const auto& e = pr.standard();
      const auto& f = e.base();
      const Eigen::Index p = f.p;
      // projection: monic degree 1, n >= p + p - 1
      Matrix<R> P0(p, p);
      for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j) P0(i, j) = R(testing::uniform(g, -3, 3), testing::uniform(g, 1, 4));
      MP P(p, p, {P0, Matrix<R>(Matrix<R>::Identity(p, p))});
      if (2 * p - 1 < f.size())
        for (Eigen::Index j = 0; j < p; ++j) {
          ++checks;
          if (!(kernel_project_right(f, 2 * p - 1, pr.mu_s, column(P, j)) == column(P, j))) ++failures;
        }
      // defect-r projection with a shifted-identity leading block: n >= N p + p - 1 - r
      for (int r = 1; r < p; ++r) {
        Matrix<R> top = Matrix<R>::Zero(p, p);
        top.block(0, r, p - r, p - r).setIdentity();
        MP Pr(p, p, {P0, top});
        const Eigen::Index n = 2 * p - 1 - r;
        for (Eigen::Index j = 0; j < p; ++j) {
          ++checks;
          ++at_bound;
          if (!(kernel_project_right(f, n, pr.mu_s, column(Pr, j)) == column(Pr, j))) ++failures;
        }
      }
      auto z = testing::random_probes(g, 2 * kProbes, avoid_list(pr));
      const Eigen::Index top_n = std::min<Eigen::Index>(6, e.last_row() + 1 - e.MR());
      for (Eigen::Index n = 1; n <= top_n; ++n)
        for (int k = 0; k < kProbes; ++k) {
          auto kr = kernel_residuals(e, pr.mut_s, pr.ft_s, n, z[2 * k], z[2 * k + 1]);
          ++checks;
          if (kr.plain != 0 || kr.mixed_D != 0 || kr.mixed_C != 0) ++failures;
        }
    }
    std::ostringstream d;
    d << checks << " exact checks (" << at_bound << " at the defect-r projection bound), " << failures << " failures";
    return {4, failures == 0 && checks > 0, "kernel identities", d.str()};
  }));

  lines.push_back(guarded(5, "generalized multiplicity", [&]() -> Line {
    Tally t;
    int with_chain = 0;
    std::string err;
    for (int i = 0; i < kJordanCases; ++i) {
      try {
        auto pr = prepare(jordan_case(g, i));
        with_chain += longest_chain(pr.rc.b) == 2 ? 1 : 0;
        compare_families(pr, kMaxJordanIndex, t);
      } catch (const std::exception& e) {
        err += "[jordan " + std::to_string(i) + ": " + e.what() + "] ";
      }
    }
    std::ostringstream d;
    d << with_chain << " cases with a length-2 chain, " << t.compared << " comparisons, " << t.mismatched
      << " mismatches";
    if (!err.empty()) d << "; errors " << err;
    return {5, err.empty() && with_chain >= 10 && t.mismatched == 0 && t.compared > 0, "generalized multiplicity",
            d.str()};
  }));

  lines.push_back(guarded(6, "Markov-Stieltjes transform identity", [&]() -> Line {
    long probes = 0, nonzero = 0, degree_bad = 0, degree_exact = 0;
    for (auto& pr : cases) {
      auto z = testing::random_probes(g, kProbes, avoid_list(pr));
      auto rep = stieltjes_transform_check(pr.rc.b, pr.rc.mu, pr.mut, z);
      for (std::size_t k = 0; k < z.size(); ++k) {
        ++probes;
        if (rep.identity_residual[k] != 0 || rep.correction_mismatch[k] != 0) ++nonzero;
      }
      if (!rep.degrees_ok) ++degree_bad;
      if (rep.S.degree() == rep.degree_bound_S && rep.St.degree() == rep.degree_bound_St) ++degree_exact;
    }
    std::ostringstream d;
    d << probes << " probes, " << nonzero << " nonzero residuals, " << degree_bad << " degree-bound violations, "
      << degree_exact << "/" << cases.size() << " cases attain both bounds exactly";
    return {6, nonzero == 0 && degree_bad == 0 && probes > 0, "Markov-Stieltjes transform identity", d.str()};
  }));

  lines.push_back(guarded(7, "Jacobi-Pineiro parameter shift", [&]() -> Line {
    const auto t0 = std::chrono::steady_clock::now();
    PrecisionGuard guard(kJPBits);
    const B tol(kJPTol);
    B worst_closed(0), worst_oracle(0);
    const std::vector<JPParams<B>> sets{{{B(0), B(1) / 2, B(1) / 3}, B(5) / 2},
                                        {{B(1) / 4, B(-1) / 3, B(1) / 5}, B(3) / 2}};
    for (const auto& p : sets) {
      auto mu = jp_measure(p);
      auto fam = jp_family(p, 14);
      auto b = jp_bundle(JPPerturbation::First, B(1), B(0));
      DualEngine<B> e(mu, fam, b, Normalization::BMonic);
      auto ft = oracle_direct(perturbed_measure(b, mu), 12, Normalization::BMonic);
      const auto sh = jp_first_shift(p);
      for (int n = 0; n <= 10; ++n) {
        const MatPoly<B> got = e.typeII(n);
        const MatPoly<B> want = detail::as_matpoly(jp_typeII(sh, n));
        const B scale = want.max_abs_coeff();
        worst_closed = std::max(worst_closed, B(MatPoly<B>(got - want).max_abs_coeff() / scale));
        worst_oracle = std::max(worst_oracle, B(MatPoly<B>(got - ft.B[n]).max_abs_coeff() / scale));
      }
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "n <= 10, 2 parameter sets, max relative error vs shifted closed form " << worst_closed.str(3)
      << ", vs oracle " << worst_oracle.str(3) << ", " << secs << " s";
    return {7, worst_closed < tol && worst_oracle < tol && secs <= kShiftBudget, "Jacobi-Pineiro parameter shift",
            d.str()};
  }));

  lines.push_back(guarded(8, "Jacobi-Pineiro closed-form self-consistency", [&]() -> Line {
    PrecisionGuard guard(kJPBits);
    const B tol(kJPTol);
    JPParams<B> p{{B(0), B(1) / 2, B(1) / 3}, B(3) / 2};
    auto mu = jp_measure(p);
    B worst(0);
    int printed_P0_off = 0, printed_D1_off = 0;
    auto relerr = [](const B& a, const B& b) { return B(bmp::abs(a - b) / std::max({bmp::abs(a), bmp::abs(b), B(1)})); };
    for (int n = 1; n <= 8; ++n) {
      auto v = jp_boundary_values(p, n);
      auto w = jp_boundary_values(p, n, DisplayVariant::AsPrinted);
      const Poly<B> P = jp_typeII(p, n);
      const MatPoly<B> A = jp_typeI(p, n);
      worst = std::max({worst, relerr(v.P0, P(B(0))), relerr(v.P1, P(B(1)))});
      if (!(relerr(w.P0, P(B(0))) < tol)) ++printed_P0_off;
      B c1(0);
      for (int a = 0; a < 3; ++a) {
        worst = std::max({worst, relerr(v.PI0[a], A(B(0))(a, 0)), relerr(v.PI1[a], A(B(1))(a, 0))});
        const B q = testing::jacobi_quad(P, p.alpha[a], B(p.beta - 1));
        worst = std::max({worst, relerr(v.D1[a], q), relerr(cauchy_row(detail::as_matpoly(P), mu, B(1))(a), q)});
        if (!(relerr(w.D1[a], q) < tol)) ++printed_D1_off;
        c1 += testing::jacobi_quad(A.entry(a, 0), p.alpha[a], B(p.beta - 1));
      }
      worst = std::max({worst, relerr(v.C1, c1), relerr(cauchy_col(mu, A, B(1))(0), c1)});
    }
    std::ostringstream d;
    d << "n = 1..8, max relative error " << worst.str(3) << "; P_n(0) display: printed Pochhammer off in "
      << printed_P0_off << "/8, resolved to (alpha_a+beta+n+1)_{n_a}; D_n(1) display: printed shift off in "
      << printed_D1_off << "/24, resolved to (alpha_a+L+1)_beta";
    return {8, worst < tol && printed_P0_off > 0 && printed_D1_off > 0, "Jacobi-Pineiro closed-form self-consistency",
            d.str()};
  }));

  lines.push_back(guarded(9, "Smith/Jordan consistency", [&]() -> Line {
    int agree = 0, total = 0, eigen = 0;
    for (int i = 0; i < kSmithCases; ++i) {
      const int s = 1 + i % 3;
      std::vector<R> roots;
      MP M = random_smith_input(g, s, roots);
      if (determinant(M).is_zero() || M.degree() > 3) continue;
      ++total;
      auto S = smith_form(M);
      MP D(s, s);
      for (int k = 0; k < s; ++k) D.set_entry(k, k, S.invariant[k]);
      bool ok = S.E * D * S.F == M;
      ok = ok && determinant(S.E).degree() == 0 && determinant(S.F).degree() == 0;
      for (const auto& e : rational_roots(determinant(M))) {
        ++eigen;
        auto ch = jordan_chains(M, e.value, e.multiplicity);
        ok = ok && smith_multiplicities(S, e.value) == partial_multiplicities(ch);
        ok = ok && partial_multiplicities(left_jordan_chains(M, e.value, e.multiplicity)) == partial_multiplicities(ch);
      }
      agree += ok ? 1 : 0;
    }
    std::ostringstream d;
    d << agree << "/" << total << " regular polynomials (size <= 3, degree <= 3) agree over " << eigen << " eigenvalues";
    return {9, total >= 20 && agree == total, "Smith/Jordan consistency", d.str()};
  }));

  lines.push_back(guarded(10, "sufficiency experiment (logged)", [&]() -> Line {
    int table[2][2][2] = {};
    for (const auto& r : ex) ++table[r.tau][r.minors][r.lu];
    const int counter = table[1][1][0];
    std::ostringstream d;
    d << "(tau!=0, minors!=0, LU) counts:";
    for (int a = 1; a >= 0; --a)
      for (int b = 1; b >= 0; --b)
        for (int c = 1; c >= 0; --c) d << " " << (a ? "T" : "t") << (b ? "M" : "m") << (c ? "L" : "l") << "=" << table[a][b][c];
    d << "; counterexamples to partial sufficiency: " << counter;
    if (counter > 0) d << "  *** FLAGGED ***";
    return {10, true, "sufficiency experiment (logged)", d.str()};
  }));

  bool all = true;
  for (const auto& l : lines) {
    std::printf("C%-2d %s  %s: %s\n", l.id, l.pass ? "PASS" : "FAIL", l.title.c_str(), l.detail.c_str());
    all = all && l.pass;
  }
  return all ? 0 : 1;
}
