#ifndef MOPKIT_JACOBI_PINEIRO_HPP
#define MOPKIT_JACOBI_PINEIRO_HPP

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "mopkit/uvarov.hpp"

namespace mopkit {

// Weights x^{alpha_a} (1-x)^beta on [0,1], a = 1..3 (stored 0-based).
template <class T>
struct JPParams {
  std::array<T, 3> alpha;
  T beta;
};

using StepIndex = std::array<int, 3>;

inline StepIndex jp_stepline(int n) {
  const int m = n / 3;
  switch (n % 3) {
    case 0: return {m, m, m};
    case 1: return {m + 1, m, m};
    default: return {m + 1, m + 1, m};
  }
}

namespace detail {

template <class T>
bool near_integer(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    return denominator(x) == 1;
  } else {
    T r = bmp::round(x);
    return abs_value(T(x - r)) <= ScalarTraits<T>::tol();
  }
}

template <class T>
T gamma_of(const T& x) {
  if constexpr (ScalarTraits<T>::exact) {
    throw BackendUnsupported("Gamma values are not rational in general");
  } else {
    return gamma_fn(x);
  }
}

template <class T>
T beta_fn(const T& a, const T& b) {
  return gamma_of(a) * gamma_of(b) / gamma_of(T(a + b));
}

// (x)_y for real y.
template <class T>
T poch_real(const T& x, const T& y) {
  if constexpr (ScalarTraits<T>::exact) {
    if (denominator(y) != 1 || y < 0) throw BackendUnsupported("non-integer Pochhammer index on the rational backend");
    return pochhammer(x, static_cast<int>(numerator(y)));
  } else {
    return pochhammer_real(x, y);
  }
}

template <class T>
MatPoly<T> as_matpoly(const Poly<T>& p) {
  std::vector<Matrix<T>> co;
  for (int k = 0; k <= p.degree(); ++k) co.push_back(Matrix<T>::Constant(1, 1, p.coeff(k)));
  return MatPoly<T>(1, 1, std::move(co));
}

}  // namespace detail

// Throws ATViolation unless each parameter exceeds -1 and alpha_i - alpha_j is never an integer.
template <class T>
void jp_validate(const JPParams<T>& p) {
  for (int a = 0; a < 3; ++a)
    if (!(p.alpha[a] > -1)) throw ATViolation("alpha_" + std::to_string(a + 1) + " must exceed -1");
  if (!(p.beta > -1)) throw ATViolation("beta must exceed -1");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (detail::near_integer(T(p.alpha[i] - p.alpha[j])))
        throw ATViolation("alpha_" + std::to_string(i + 1) + " - alpha_" + std::to_string(j + 1) + " is an integer");
}

// int_0^1 x^{alpha_a + k} (1-x)^beta dx. Exact on the rational backend when beta is a nonnegative integer.
template <class T>
T jp_moment(const JPParams<T>& p, int a, int k) {
  const T& al = p.alpha[a];
  if constexpr (ScalarTraits<T>::exact) {
    if (denominator(p.beta) != 1 || p.beta < 0)
      throw BackendUnsupported("exact Jacobi-Pineiro moments need a nonnegative integer beta");
    const int b = static_cast<int>(numerator(p.beta));
    return factorial<T>(b) / pochhammer(T(al + k + 1), b + 1);
  } else {
    return detail::beta_fn(T(al + k + 1), T(p.beta + 1));
  }
}

// The ratio moment(k+1) / moment(k), exact on every backend.
template <class T>
T jp_moment_ratio(const JPParams<T>& p, int a, int k) {
  return (p.alpha[a] + T(k + 1)) / (p.alpha[a] + p.beta + T(k + 2));
}

namespace detail {

// int x^A (1-x)^B / (z - x)^{o+1}, z outside (0,1), by Beta values at the endpoints and a series elsewhere.
template <class T>
T jp_cauchy(const T& A, const T& B, const T& z, int o) {
  if constexpr (ScalarTraits<T>::exact) {
    throw OracleMissing("Jacobi-Pineiro Cauchy transforms are evaluated on the float backend");
  } else {
    if (z == 1) {
      if (!(B - o > 0)) throw IntegrabilityViolation("Cauchy transform at 1 needs beta > order");
      return beta_fn(T(A + 1), T(B - o));
    }
    if (z == 0) {
      if (!(A - o > 0)) throw IntegrabilityViolation("Cauchy transform at 0 needs alpha > order");
      T v = beta_fn(T(A - o), T(B + 1));
      return (o % 2 == 0) ? T(-v) : v;
    }
    if (z > 0 && z < 1) throw PoleOnSupport("Cauchy transform inside [0,1]");
    // z > 1: expand in x/z.  z < 0: substitute x = 1 - u and expand in u/(1 - z).
    const bool right = z > 1;
    const T zz = right ? z : T(1 - z);
    const T a = right ? A : B, b = right ? B : A;
    const T eps = bmp::ldexp(T(1), -float_bits());
    const T tail = zz / (zz - 1);
    T m = beta_fn(T(a + 1), T(b + 1));
    T coef(1), pw = bmp::pow(T(1) / zz, o + 1), sum(0);
    for (int k = 0; k < 400000; ++k) {
      if (k > 0) {
        coef = coef * T(k + o) / T(k);
        m = m * (a + T(k)) / (a + b + T(k + 1));
      }
      T term = coef * m * pw;
      sum += term;
      pw /= zz;
      if (k > o + 4 && bmp::abs(term) * tail * T(k + o + 1) <= eps * bmp::abs(sum)) {
        if (right) return sum;
        return (o % 2 == 0) ? T(-sum) : sum;
      }
    }
    throw SeriesDivergent("Jacobi-Pineiro Cauchy series did not converge");
  }
}

}  // namespace detail

template <class T>
ClosedFormWeight<T> jp_weight(const JPParams<T>& p, int a) {
  ClosedFormWeight<T> w;
  w.name = "jp[" + std::to_string(a + 1) + "]";
  w.lo = T(0);
  w.hi = T(1);
  w.radius = T(1);
  auto cache = std::make_shared<std::vector<T>>();
  w.moment = [p, a, cache](int k) -> T {
    if (cache->empty()) cache->push_back(jp_moment(p, a, 0));
    while (static_cast<int>(cache->size()) <= k) {
      const int j = static_cast<int>(cache->size()) - 1;
      cache->push_back(cache->back() * jp_moment_ratio(p, a, j));
    }
    return (*cache)[k];
  };
  const T A = p.alpha[a], B = p.beta;
  if constexpr (!ScalarTraits<T>::exact) w.cauchy = [A, B](const T& z, int o) { return detail::jp_cauchy(A, B, z, o); };
  w.integrable = [A, B](const T& x, int ord) {
    if (x == 1) return B - ord > -1;
    if (x == 0) return A - ord > -1;
    return false;
  };
  return w;
}

// 1 x 3 matrix of measures (w_1, w_2, w_3) (1-x)^beta dx.
template <class T>
MatrixMeasure<T> jp_measure(const JPParams<T>& p) {
  MatrixMeasure<T> mu(1, 3);
  for (int a = 0; a < 3; ++a) mu.entry(0, a).parts.push_back(jp_weight(p, a));
  return mu;
}

// Type II coefficient C_n^{l1,l2,l3} of x^{l1+l2+l3}.
template <class T>
T jp_typeII_coeff(const JPParams<T>& p, int n, const StepIndex& l) {
  const StepIndex nn = jp_stepline(n);
  const T& a1 = p.alpha[0];
  const T& a2 = p.alpha[1];
  const T& a3 = p.alpha[2];
  const T& b = p.beta;
  const int L = l[0] + l[1] + l[2], l23 = l[1] + l[2];
  T c = (n % 2 == 0) ? T(1) : T(-1);
  for (int q = 0; q < 3; ++q) {
    c *= pochhammer(T(p.alpha[q] + 1), nn[q]) / pochhammer(T(p.alpha[q] + b + T(n + 1)), nn[q]);
    c *= pochhammer(T(-nn[q]), l[q]) / factorial<T>(l[q]);
  }
  c *= pochhammer(T(a1 + b + T(nn[0] + 1)), L) / pochhammer(T(a1 + 1), L);
  c *= pochhammer(T(a1 + T(nn[0] + 1)), l23) * pochhammer(T(a2 + T(nn[1] + 1)), l[2]);
  c /= pochhammer(T(a1 + b + T(nn[0] + 1)), l23) * pochhammer(T(a2 + b + T(nn[0] + nn[1] + 1)), l[2]);
  c *= pochhammer(T(a2 + b + T(nn[0] + nn[1] + 1)), l23) * pochhammer(T(a3 + b + T(n + 1)), l[2]);
  c /= pochhammer(T(a2 + 1), l23) * pochhammer(T(a3 + 1), l[2]);
  return c;
}

// Monic P_n as coefficients of x^0..x^n, summing the (l1,l2,l3) table.
template <class T>
Poly<T> jp_typeII(const JPParams<T>& p, int n) {
  const StepIndex nn = jp_stepline(n);
  std::vector<T> c(n + 1, T(0));
  for (int l1 = 0; l1 <= nn[0]; ++l1)
    for (int l2 = 0; l2 <= nn[1]; ++l2)
      for (int l3 = 0; l3 <= nn[2]; ++l3) c[l1 + l2 + l3] += jp_typeII_coeff(p, n, {l1, l2, l3});
  return Poly<T>(c);
}

// Type I coefficient C_n^{(a),l}, l < n_a.
template <class T>
T jp_typeI_coeff(const JPParams<T>& p, int n, int a, int l) {
  const StepIndex nn = jp_stepline(n);
  const T& aa = p.alpha[a];
  const T& b = p.beta;
  T c = ((n - 1) % 2 == 0) ? T(1) : T(-1);
  for (int q = 0; q < 3; ++q) c *= pochhammer(T(p.alpha[q] + b + T(n)), nn[q]);
  c /= factorial<T>(nn[a] - 1);
  for (int q = 0; q < 3; ++q)
    if (q != a) c /= pochhammer(T(p.alpha[q] - aa), nn[q]);
  c *= detail::gamma_of(T(aa + b + T(n))) / (detail::gamma_of(T(b + T(n))) * detail::gamma_of(T(aa + 1)));
  c *= pochhammer(T(-nn[a] + 1), l) * pochhammer(T(aa + b + T(n)), l) / (factorial<T>(l) * pochhammer(T(aa + 1), l));
  for (int q = 0; q < 3; ++q)
    if (q != a) c *= pochhammer(T(aa - p.alpha[q] - T(nn[q] - 1)), l) / pochhammer(T(aa - p.alpha[q] + 1), l);
  return c;
}

// (P_n^{(1)}, P_n^{(2)}, P_n^{(3)})^T as a 3 x 1 matrix polynomial, n >= 1.
template <class T>
MatPoly<T> jp_typeI(const JPParams<T>& p, int n) {
  const StepIndex nn = jp_stepline(n);
  const int deg = std::max({nn[0], nn[1], nn[2]});
  std::vector<Matrix<T>> co(std::max(deg, 1), Matrix<T>::Zero(3, 1));
  for (int a = 0; a < 3; ++a)
    for (int l = 0; l < nn[a]; ++l) co[l](a, 0) = jp_typeI_coeff(p, n, a, l);
  return MatPoly<T>(3, 1, std::move(co));
}

// B-monic family from the closed forms: B_k = P_k, A_k = P_{k+1}^{(.)} (the type I with k+1 coefficients).
template <class T>
Family<T> jp_family(const JPParams<T>& p, int N) {
  Family<T> f;
  f.q = 1;
  f.p = 3;
  f.norm = Normalization::BMonic;
  f.H = Vector<T>::Zero(N);
  for (int k = 0; k < N; ++k) {
    f.B.push_back(detail::as_matpoly(jp_typeII(p, k)));
    f.A.push_back(jp_typeI(p, k + 1));
    // B-monic: the top step-line coefficient of A_k is 1 / H_k
    f.H(k) = T(1) / f.A[k].coeff(k / 3)(k % 3, 0);
  }
  return f;
}

// Which display to use where the printed formula and the direct evaluation disagree.
enum class DisplayVariant { Corrected, AsPrinted };

template <class T>
struct JPBoundary {
  T P0, P1;                      // type II at 0 and 1
  std::array<T, 3> PI0, PI1;     // type I components at 0 and 1
  T C1;                          // int d mu A_n / (1 - x)
  std::array<T, 3> D1;           // int P_n d mu_a / (1 - x)
};

// Closed-form endpoint values of P_n and P_n^{(a)} (type I index n >= 1) and the Cauchy values at 1.
template <class T>
JPBoundary<T> jp_boundary_values(const JPParams<T>& p, int n, DisplayVariant v = DisplayVariant::Corrected) {
  const StepIndex nn = jp_stepline(n);
  const T& b = p.beta;
  JPBoundary<T> r;
  r.P0 = (n % 2 == 0) ? T(1) : T(-1);
  r.P1 = pochhammer(T(b + 1), n);
  for (int a = 0; a < 3; ++a) {
    const int shift = v == DisplayVariant::Corrected ? n + 1 : 1;
    r.P0 *= pochhammer(T(p.alpha[a] + 1), nn[a]) / pochhammer(T(p.alpha[a] + b + T(shift)), nn[a]);
    r.P1 /= pochhammer(T(p.alpha[a] + b + T(n + 1)), nn[a]);
  }
  r.C1 = T(0);
  for (int a = 0; a < 3; ++a) {
    r.PI0[a] = nn[a] > 0 ? jp_typeI_coeff(p, n, a, 0) : T(0);
    r.PI1[a] = T(0);
    for (int l = 0; l < nn[a]; ++l) {
      T c = jp_typeI_coeff(p, n, a, l);
      r.PI1[a] += c;
      r.C1 += c / detail::poch_real(T(p.alpha[a] + T(l + 1)), b);
    }
  }
  r.C1 *= detail::gamma_of(b);
  for (int a = 0; a < 3; ++a) {
    T s(0);
    for (int l1 = 0; l1 <= nn[0]; ++l1)
      for (int l2 = 0; l2 <= nn[1]; ++l2)
        for (int l3 = 0; l3 <= nn[2]; ++l3) {
          const int L = l1 + l2 + l3;
          const int shift = v == DisplayVariant::Corrected ? L + 1 : L;
          s += jp_typeII_coeff(p, n, {l1, l2, l3}) / detail::poch_real(T(p.alpha[a] + T(shift)), b);
        }
    r.D1[a] = detail::gamma_of(b) * s;
  }
  return r;
}

enum class JPPerturbation { First, Second };

template <class T>
MatPoly<T> jp_shift_matrix(const T& root, bool root_minus_x) {
  // [[0, f, 0], [0, 0, f], [1, 0, 0]] with f = x - root or root - x
  Matrix<T> c0 = Matrix<T>::Zero(3, 3), c1 = Matrix<T>::Zero(3, 3);
  const T s = root_minus_x ? T(-1) : T(1);
  c0(0, 1) = -s * root;
  c0(1, 2) = -s * root;
  c0(2, 0) = T(1);
  c1(0, 1) = s;
  c1(1, 2) = s;
  return MatPoly<T>(3, 3, {c0, c1});
}

template <class T>
MatPoly<T> scalar_linear(const T& c0, const T& c1) {
  return MatPoly<T>(1, 1, {Matrix<T>::Constant(1, 1, c0), Matrix<T>::Constant(1, 1, c1)});
}

// First:  (c - x) d mu~ = d mu P_1, P_1 built on x - d, masses delta(x - c) xi(x) P_1 with xi 1 x 3.
// Second: d mu~ P_2 = (x - d) d mu, P_2 built on c - x, masses delta(x - c) (x - d) xi_j e_j^T, j = 1, 2.
// xi is a 1 x 3 polynomial for First and a pair of scalar polynomials (stored 1 x 2) for Second; empty = none.
template <class T>
PerturbationBundle<T> jp_bundle(JPPerturbation which, const T& c, const T& d, const MatPoly<T>& xi = MatPoly<T>()) {
  auto unit = [](int i) {
    Vector<T> e = Vector<T>::Zero(3);
    e(i) = T(1);
    return e;
  };
  auto one = [] { return Vector<T>::Constant(1, T(1)); };
  std::vector<MassTerm<T>> masses;
  if (which == JPPerturbation::First) {
    MatPoly<T> L = scalar_linear(c, T(-1));
    MatPoly<T> R = jp_shift_matrix(d, false);
    std::vector<SpectralPoint<T>> sl{{c, 1, {{one()}}, {{one()}}}};
    std::vector<SpectralPoint<T>> sr{{d, 2, {{unit(1)}, {unit(2)}}, {{unit(0)}, {unit(1)}}}};
    if (xi.rows() == 1 && xi.cols() == 3 && !xi.is_zero()) masses.push_back({0, 0, 0, xi});
    return make_bundle(L, R, Orientation::Dual, masses, sl, sr);
  }
  MatPoly<T> L = scalar_linear(T(-d), T(1));
  MatPoly<T> R = jp_shift_matrix(c, true);
  std::vector<SpectralPoint<T>> sl{{d, 1, {{one()}}, {{one()}}}};
  std::vector<SpectralPoint<T>> sr{{c, 2, {{unit(1)}, {unit(2)}}, {{unit(0)}, {unit(1)}}}};
  if (xi.rows() == 1 && xi.cols() == 2)
    for (int j = 0; j < 2; ++j) {
      MatPoly<T> s(1, 1);
      std::vector<Matrix<T>> co;
      for (int k = 0; k <= xi.degree(); ++k) co.push_back(Matrix<T>::Constant(1, 1, xi.coeff(k)(0, j)));
      if (!co.empty()) s = MatPoly<T>(1, 1, co);
      if (!s.is_zero()) masses.push_back({0, j, 0, s});
    }
  return make_bundle(L, R, Orientation::Standard, masses, sl, sr);
}

// Parameters of the JP family that perturbation 1 with c = 1, d = 0, xi = 0 produces.
template <class T>
JPParams<T> jp_first_shift(const JPParams<T>& p) {
  return {{p.alpha[2], T(p.alpha[0] + 1), T(p.alpha[1] + 1)}, T(p.beta - 1)};
}

// Ledger values used by the explicit case-study determinants (type I index is the LU index).
template <class T>
struct JPLedger {
  const MatrixMeasure<T>* mu;
  const Family<T>* f;
  T c, d;
  MatPoly<T> xi;
  T PI(Eigen::Index k, int a, const T& x) const { return f->A[k](x)(a, 0); }
  T P(Eigen::Index k, const T& x) const { return f->B[k](x)(0, 0); }
  // C_k(c) + xi(c) A_k(c)
  T W(Eigen::Index k) const {
    T v = cauchy_col(*mu, f->A[k], c)(0);
    if (!xi.is_zero()) v += (xi(c) * f->A[k](c))(0, 0);
    return v;
  }
  // D_k^{(a)}(c) + xi_j(c) P_k(c) with xi stored 1 x 2
  T DX(Eigen::Index k, int a, int j) const {
    T v = cauchy_row(f->B[k], *mu, c)(a);
    if (!xi.is_zero()) v += xi(c)(0, j) * P(k, c);
    return v;
  }
};

namespace detail {

template <class T>
Poly<T> divide_checked(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = divmod(a, b);
  T scale(1);
  for (int k = 0; k <= a.degree(); ++k)
    if (abs_value(a.coeff(k)) > scale) scale = abs_value(a.coeff(k));
  for (int k = 0; k <= r.degree(); ++k)
    if (!ScalarTraits<T>::negligible(r.coeff(k), scale)) throw NotDivisible("display numerator is not divisible");
  return q;
}

}  // namespace detail

// Perturbation 1 type II display: (x - c)[sum_{i<=n} det3(i)/tau_n P_i] + det2/tau_n, the monic B~_{n+1}.
// The constant is B~_{n+1}(c), the W cofactor of det3; the opposite sign fails orthogonality.
template <class T>
Poly<T> jp_first_typeII_display(const JPLedger<T>& g, int n) {
  auto col = [&](Eigen::Index i) {
    Vector<T> v(3);
    v << g.PI(i, 0, g.d), g.PI(i, 1, g.d), g.W(i);
    return v;
  };
  auto det3 = [&](Eigen::Index i) {
    Matrix<T> M(3, 3);
    M.col(0) = col(i);
    M.col(1) = col(n + 1);
    M.col(2) = col(n + 2);
    return determinant(M);
  };
  const T tau = det3(n);
  Poly<T> s;
  for (int i = 0; i <= n; ++i) s = s + g.f->B[i].entry(0, 0) * T(det3(i) / tau);
  Matrix<T> M2(2, 2);
  M2 << g.PI(n + 1, 0, g.d), g.PI(n + 2, 0, g.d), g.PI(n + 1, 1, g.d), g.PI(n + 2, 1, g.d);
  return Poly<T>::linear_root(g.c) * s + Poly<T>::constant(T(determinant(M2) / tau));
}

// Perturbation 1 type I display, rows n-1..n+2 divided by the minor of rows n..n+2; returns the
// 3 x 1 vector A with P_1 A equal to the display (the coefficient of A_{n-1} is 1).
// Against the LU-indexed family this is -A~_n, not A~_{n-1}.
template <class T>
MatPoly<T> jp_first_typeI_display(const JPLedger<T>& g, int n) {
  auto row = [&](Eigen::Index k) {
    RowVector<T> r(3);
    r << g.PI(k, 0, g.d), g.PI(k, 1, g.d), g.W(k);
    return r;
  };
  Matrix<T> G(4, 3);
  for (int i = 0; i < 4; ++i) G.row(i) = row(n - 1 + i);
  const T tau = determinant(Matrix<T>(G.bottomRows(3)));
  MatPoly<T> num(3, 1);
  for (int i = 0; i < 4; ++i) {
    Matrix<T> minor(3, 3);
    for (int r = 0, rr = 0; r < 4; ++r)
      if (r != i) minor.row(rr++) = G.row(r);
    const T cof = (i % 2 == 0 ? T(1) : T(-1)) * determinant(minor);
    num += g.f->A[n - 1 + i] * T(cof / tau);
  }
  const Poly<T> xd = Poly<T>::linear_root(g.d);
  MatPoly<T> out(3, 1);
  out.set_entry(0, 0, num.entry(2, 0));
  out.set_entry(1, 0, detail::divide_checked(num.entry(0, 0), xd));
  out.set_entry(2, 0, detail::divide_checked(num.entry(1, 0), xd));
  return out;
}

// Perturbation 2 type II display: det4 over rows n-2..n+1 / (tau_n (x - d)).
template <class T>
Poly<T> jp_second_typeII_display(const JPLedger<T>& g, int n) {
  auto row = [&](Eigen::Index k) {
    RowVector<T> r(3);
    r << g.P(k, g.d), g.DX(k, 1, 0), g.DX(k, 2, 1);
    return r;
  };
  Matrix<T> G(4, 3);
  for (int i = 0; i < 4; ++i) G.row(i) = row(n - 2 + i);
  const T tau = determinant(Matrix<T>(G.topRows(3)));
  Poly<T> num;
  for (int i = 0; i < 4; ++i) {
    Matrix<T> minor(3, 3);
    for (int r = 0, rr = 0; r < 4; ++r)
      if (r != i) minor.row(rr++) = G.row(r);
    const T cof = ((i + 3) % 2 == 0 ? T(1) : T(-1)) * determinant(minor);
    num = num + g.f->B[n - 2 + i].entry(0, 0) * T(cof / tau);
  }
  return detail::divide_checked(num, Poly<T>::linear_root(g.d));
}

// Perturbation 2 type I display labelled A~_{n-1}:
// (1/tau_n) [sum_{i<=n-3} ((x-c) P_i^{(2)}, (x-c) P_i^{(3)}, -P_i^{(1)})^T det3(i) + (-det2(D^{(3)}), det2(D^{(2)}), 0)^T].
// The first constant is the cofactor of the D^{(2)} column, so it enters with a minus sign.
template <class T>
MatPoly<T> jp_second_typeI_display(const JPLedger<T>& g, int n) {
  auto row = [&](Eigen::Index k) {
    RowVector<T> r(3);
    r << g.P(k, g.d), g.DX(k, 1, 0), g.DX(k, 2, 1);
    return r;
  };
  auto det3 = [&](Eigen::Index i) {
    Matrix<T> M(3, 3);
    M.row(0) = row(i);
    M.row(1) = row(n - 2);
    M.row(2) = row(n - 1);
    return determinant(M);
  };
  Matrix<T> T3(3, 3);
  T3.row(0) = row(n - 2);
  T3.row(1) = row(n - 1);
  T3.row(2) = row(n);
  const T tau = determinant(T3);
  const Poly<T> xc = Poly<T>::linear_root(g.c);
  MatPoly<T> out(3, 1);
  Poly<T> e0, e1, e2;
  for (int i = 0; i <= n - 3; ++i) {
    const T w = det3(i) / tau;
    const MatPoly<T>& A = g.f->A[i];
    e0 = e0 + xc * A.entry(1, 0) * w;
    e1 = e1 + xc * A.entry(2, 0) * w;
    e2 = e2 - A.entry(0, 0) * w;
  }
  Matrix<T> a(2, 2), b(2, 2);
  a << row(n - 2)(0), row(n - 2)(2), row(n - 1)(0), row(n - 1)(2);
  b << row(n - 2)(0), row(n - 2)(1), row(n - 1)(0), row(n - 1)(1);
  e0 = e0 - Poly<T>::constant(T(determinant(a) / tau));
  e1 = e1 + Poly<T>::constant(T(determinant(b) / tau));
  out.set_entry(0, 0, e0);
  out.set_entry(1, 0, e1);
  out.set_entry(2, 0, e2);
  return out;
}

}  // namespace mopkit

#endif
