#ifndef MOPKIT_STIELTJES_HPP
#define MOPKIT_STIELTJES_HPP

#include <vector>

#include "mopkit/uvarov.hpp"

namespace mopkit {

template <class T>
struct StieltjesEval {
  T z;
  Matrix<T> F;  // q x p
};

// F(z) = int d mu(x) / (z - x), entrywise.
template <class T>
StieltjesEval<T> stieltjes_eval(const MatrixMeasure<T>& mu, const T& z) {
  return {z, integrate_right(MatPoly<T>::identity(mu.q()), mu, cauchy_kernel(z, 0))};
}

namespace detail {

// int x^k d mu, q x p.
template <class T>
Matrix<T> raw_moment(const MatrixMeasure<T>& mu, int k) {
  return integrate_right(MatPoly<T>::identity(mu.q()), mu, RationalFn<T>::polynomial(Poly<T>::monomial(k)));
}

// sum_{i>=1} sum_{j=1}^{i} (int d mu x^{i-j}) R_i z^{j-1}: int d mu(x) (R(z) - R(x)) / (z - x).
template <class T>
MatPoly<T> correction_right(const MatrixMeasure<T>& mu, const MatPoly<T>& R) {
  const int N = R.degree();
  if (N < 1) return MatPoly<T>(mu.q(), R.cols());
  std::vector<Matrix<T>> m;
  for (int k = 0; k < N; ++k) m.push_back(raw_moment(mu, k));
  std::vector<Matrix<T>> c(N, Matrix<T>::Zero(mu.q(), R.cols()));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= i; ++j) c[j - 1] += m[i - j] * R.coeff(i);
  return MatPoly<T>(mu.q(), R.cols(), std::move(c));
}

// sum_{i>=1} L_i sum_{j=1}^{i} (int x^{i-j} d mu) z^{j-1}: int (L(z) - L(x)) / (z - x) d mu(x).
template <class T>
MatPoly<T> correction_left(const MatPoly<T>& L, const MatrixMeasure<T>& mu) {
  const int N = L.degree();
  if (N < 1) return MatPoly<T>(L.rows(), mu.p());
  std::vector<Matrix<T>> m;
  for (int k = 0; k < N; ++k) m.push_back(raw_moment(mu, k));
  std::vector<Matrix<T>> c(N, Matrix<T>::Zero(L.rows(), mu.p()));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= i; ++j) c[j - 1] += L.coeff(i) * m[i - j];
  return MatPoly<T>(L.rows(), mu.p(), std::move(c));
}

// Same corrections by integrating the difference quotient at a fixed z.
template <class T>
Matrix<T> correction_right_at(const MatrixMeasure<T>& mu, const MatPoly<T>& R, const T& z) {
  if (R.degree() < 1) return Matrix<T>::Zero(mu.q(), R.cols());
  return integrate_left(mu, difference_quotient(R).in_y(z), RationalFn<T>::polynomial(Poly<T>::constant(T(1))));
}

template <class T>
Matrix<T> correction_left_at(const MatPoly<T>& L, const MatrixMeasure<T>& mu, const T& z) {
  if (L.degree() < 1) return Matrix<T>::Zero(L.rows(), mu.p());
  return integrate_right(difference_quotient(L).in_y(z), mu, RationalFn<T>::polynomial(Poly<T>::constant(T(1))));
}

}  // namespace detail

template <class T>
struct StieltjesReport {
  // Proof naming: S from the measure multiplied by R, S~ from L and the measure it multiplies.
  MatPoly<T> S, St;
  int degree_bound_S = -1, degree_bound_St = -1;
  bool degrees_ok = true;
  std::vector<T> probes;
  std::vector<T> identity_residual;     // per probe
  std::vector<T> correction_mismatch;   // coefficient route vs integral route, per probe
  T max() const {
    T m(0);
    for (const auto& v : identity_residual) m = v > m ? v : m;
    for (const auto& v : correction_mismatch) m = v > m ? v : m;
    return m;
  }
};

// Standard: F~ R - S = L F - S~ with S = int d mu~ dq(R), S~ = int dq(L) d mu.
// Dual:     L F~ - S = F R - S~ with S = int dq(L) d mu~, S~ = int d mu dq(R).
template <class T>
StieltjesReport<T> stieltjes_transform_check(const PerturbationBundle<T>& b, const MatrixMeasure<T>& mu,
                                             const MatrixMeasure<T>& mut, const std::vector<T>& probes) {
  StieltjesReport<T> rep;
  rep.probes = probes;
  const bool standard = b.orientation == Orientation::Standard;
  if (standard) {
    rep.S = detail::correction_right(mut, b.R);
    rep.St = detail::correction_left(b.L, mu);
    rep.degree_bound_S = b.R.degree() - 1;
    rep.degree_bound_St = b.L.degree() - 1;
  } else {
    rep.S = detail::correction_left(b.L, mut);
    rep.St = detail::correction_right(mu, b.R);
    rep.degree_bound_S = b.L.degree() - 1;
    rep.degree_bound_St = b.R.degree() - 1;
  }
  rep.degrees_ok = rep.S.degree() <= rep.degree_bound_S && rep.St.degree() <= rep.degree_bound_St;
  for (const T& z : probes) {
    Matrix<T> F = stieltjes_eval(mu, z).F, Ft = stieltjes_eval(mut, z).F;
    Matrix<T> Lz = b.L(z), Rz = b.R(z);
    Matrix<T> lhs, rhs, Sz, Stz;
    if (standard) {
      Sz = detail::correction_right_at(mut, b.R, z);
      Stz = detail::correction_left_at(b.L, mu, z);
      lhs = Ft * Rz - rep.S(z);
      rhs = Lz * F - rep.St(z);
    } else {
      Sz = detail::correction_left_at(b.L, mut, z);
      Stz = detail::correction_right_at(mu, b.R, z);
      lhs = Lz * Ft - rep.S(z);
      rhs = F * Rz - rep.St(z);
    }
    rep.identity_residual.push_back(max_abs(Matrix<T>(lhs - rhs)));
    T mm = max_abs(Matrix<T>(Sz - rep.S(z)));
    T mt = max_abs(Matrix<T>(Stz - rep.St(z)));
    rep.correction_mismatch.push_back(mm > mt ? mm : mt);
  }
  return rep;
}

}  // namespace mopkit

#endif
