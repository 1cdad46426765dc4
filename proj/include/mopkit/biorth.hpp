#ifndef MOPKIT_BIORTH_HPP
#define MOPKIT_BIORTH_HPP

#include <vector>

#include "mopkit/moments.hpp"

namespace mopkit {

enum class Normalization { BMonic, AMonic };

// M = S^{-1} H Sbar^{-T}, S and Sbar unit lower triangular.
template <class T>
struct GaussBorel {
  Matrix<T> S;
  Matrix<T> Sbar;
  Vector<T> H;
  Matrix<T> Sinv;     // S^{-1}
  Matrix<T> SbarTinv; // Sbar^{-T}
  Eigen::Index q = 1, p = 1;
  Normalization norm = Normalization::BMonic;
  Eigen::Index size() const { return H.size(); }
};

template <class T>
GaussBorel<T> gauss_borel(const Matrix<T>& M, Eigen::Index q, Eigen::Index p,
                          Normalization norm = Normalization::BMonic) {
  LduFactors<T> f = lu_nopivot(M);
  const Eigen::Index n = M.rows();
  const Matrix<T> I = Matrix<T>::Identity(n, n);
  GaussBorel<T> g;
  g.Sinv = f.L;
  g.SbarTinv = f.U;
  g.S = f.L.template triangularView<Eigen::UnitLower>().solve(I);
  Matrix<T> Uinv = f.U.template triangularView<Eigen::UnitUpper>().solve(I);
  g.Sbar = Uinv.transpose();
  g.H = f.D;
  g.q = q;
  g.p = p;
  g.norm = norm;
  return g;
}

// B_n is 1 x q, A_n is p x 1.
template <class T>
struct Family {
  std::vector<MatPoly<T>> B;
  std::vector<MatPoly<T>> A;
  Vector<T> H;
  Eigen::Index q = 1, p = 1;
  Normalization norm = Normalization::BMonic;
  Eigen::Index size() const { return static_cast<Eigen::Index>(B.size()); }
};

// Row vector polynomial sum_j c_j (X_[q])_j with (X_[q])_j = x^{floor(j/q)} e_{j mod q}.
template <class T>
MatPoly<T> row_from_coeffs(const RowVector<T>& c, Eigen::Index q) {
  const Eigen::Index n = c.size();
  std::vector<Matrix<T>> co((n + q - 1) / q, Matrix<T>::Zero(1, q));
  for (Eigen::Index j = 0; j < n; ++j) co[j / q](0, j % q) = c(j);
  return MatPoly<T>(1, q, std::move(co));
}

template <class T>
MatPoly<T> col_from_coeffs(const Vector<T>& c, Eigen::Index p) {
  const Eigen::Index n = c.size();
  std::vector<Matrix<T>> co((n + p - 1) / p, Matrix<T>::Zero(p, 1));
  for (Eigen::Index j = 0; j < n; ++j) co[j / p](j % p, 0) = c(j);
  return MatPoly<T>(p, 1, std::move(co));
}

// Inverse maps: coefficient vector of length n in the X_[q] (resp. X_[p]) basis.
template <class T>
RowVector<T> coeffs_of_row(const MatPoly<T>& B, Eigen::Index n) {
  RowVector<T> c = RowVector<T>::Zero(n);
  const Eigen::Index q = B.cols();
  for (int k = 0; k <= B.degree(); ++k)
    for (Eigen::Index b = 0; b < q; ++b) {
      Eigen::Index j = k * q + b;
      const T v = B.coeff(k)(0, b);
      if (j < n) c(j) = v;
      else if (v != 0) throw WindowError("row polynomial exceeds the coefficient window");
    }
  return c;
}

template <class T>
Vector<T> coeffs_of_col(const MatPoly<T>& A, Eigen::Index n) {
  Vector<T> c = Vector<T>::Zero(n);
  const Eigen::Index p = A.rows();
  for (int k = 0; k <= A.degree(); ++k)
    for (Eigen::Index a = 0; a < p; ++a) {
      Eigen::Index j = k * p + a;
      const T v = A.coeff(k)(a, 0);
      if (j < n) c(j) = v;
      else if (v != 0) throw WindowError("column polynomial exceeds the coefficient window");
    }
  return c;
}

// B = S X_[q], A = X_[p]^T Sbar^T H^{-1} (BMonic); B = H^{-1} S X_[q], A = X_[p]^T Sbar^T (AMonic).
template <class T>
Family<T> biorthogonal_family(const GaussBorel<T>& g) {
  Family<T> f;
  f.q = g.q;
  f.p = g.p;
  f.H = g.H;
  f.norm = g.norm;
  const Eigen::Index n = g.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    RowVector<T> bs = g.S.row(k).head(k + 1);
    Vector<T> as = g.Sbar.row(k).head(k + 1).transpose();
    if (g.norm == Normalization::BMonic) as /= g.H(k);
    else bs /= g.H(k);
    f.B.push_back(row_from_coeffs(bs, g.q));
    f.A.push_back(col_from_coeffs(as, g.p));
  }
  return f;
}

template <class T>
Family<T> family_from_measure(const MatrixMeasure<T>& mu, Eigen::Index n, Normalization norm = Normalization::BMonic) {
  return biorthogonal_family(gauss_borel(build_moment_matrix(mu, n), mu.q(), mu.p(), norm));
}

// P_{nm} = <B_n, A_m>_mu
template <class T>
Matrix<T> pairing_matrix(const Family<T>& f, const MatrixMeasure<T>& mu) {
  const Eigen::Index n = f.size();
  Matrix<T> P(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) P(i, j) = pair_integrate(f.B[i], mu, f.A[j]);
  return P;
}

// max |<B_n, A_m> - delta_{nm}|
template <class T>
T pairing_check(const Family<T>& f, const MatrixMeasure<T>& mu) {
  Matrix<T> P = pairing_matrix(f, mu);
  P -= Matrix<T>::Identity(P.rows(), P.cols());
  return max_abs(P);
}

// K^{[n]}(x, y) = sum_{k<=n} A_k(x) B_k(y), p x q.
template <class T>
Matrix<T> cd_kernel(const Family<T>& f, Eigen::Index n, const T& x, const T& y) {
  Matrix<T> K = Matrix<T>::Zero(f.p, f.q);
  for (Eigen::Index k = 0; k <= n; ++k) K += f.A[k](x) * f.B[k](y);
  return K;
}

// sum_{k<=n} A_k(x) <B_k, P>: reproduces P when it lies in span{A_0..A_n}.
template <class T>
MatPoly<T> kernel_project_right(const Family<T>& f, Eigen::Index n, const MatrixMeasure<T>& mu, const MatPoly<T>& P) {
  MatPoly<T> out(f.p, 1);
  for (Eigen::Index k = 0; k <= n; ++k) out += f.A[k] * pair_integrate(f.B[k], mu, P);
  return out;
}

// sum_{k<=n} <Q, A_k> B_k(y): reproduces Q when it lies in span{B_0..B_n}.
template <class T>
MatPoly<T> kernel_project_left(const Family<T>& f, Eigen::Index n, const MatrixMeasure<T>& mu, const MatPoly<T>& Q) {
  MatPoly<T> out(1, f.q);
  for (Eigen::Index k = 0; k <= n; ++k) out += f.B[k] * pair_integrate(Q, mu, f.A[k]);
  return out;
}

// C_n(z) = int d mu(x) A_n(x) / (z - x), q x 1; D_n(z) = int B_n(x) d mu(x) / (z - x), 1 x p.
template <class T>
Vector<T> cauchy_C(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& z, int order = 0) {
  return cauchy_col(mu, f.A[n], z, order);
}

template <class T>
RowVector<T> cauchy_D(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& z, int order = 0) {
  return cauchy_row(f.B[n], mu, z, order);
}

// Series route C_n(z) = sum_k z^{-k-1} int x^k d mu A_n, truncated after K terms.
template <class T>
Vector<T> cauchy_C_series(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& z, int K) {
  Vector<T> out = Vector<T>::Zero(f.q);
  T zi = T(1) / z, pw = zi;
  for (int k = 0; k < K; ++k) {
    out += integrate_col(mu, f.A[n], RationalFn<T>::polynomial(Poly<T>::monomial(k))) * pw;
    pw *= zi;
  }
  return out;
}

template <class T>
RowVector<T> cauchy_D_series(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& z, int K) {
  RowVector<T> out = RowVector<T>::Zero(f.p);
  T zi = T(1) / z, pw = zi;
  for (int k = 0; k < K; ++k) {
    out += integrate_row(f.B[n], mu, RationalFn<T>::polynomial(Poly<T>::monomial(k))) * pw;
    pw *= zi;
  }
  return out;
}

// K_C^{[n]}(x, y) = sum_{k<=n} C_k(x) B_k(y), q x q.
template <class T>
Matrix<T> mixed_kernel_C(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& x, const T& y) {
  Matrix<T> K = Matrix<T>::Zero(f.q, f.q);
  for (Eigen::Index k = 0; k <= n; ++k) K += cauchy_C(f, mu, k, x) * f.B[k](y);
  return K;
}

// K_D^{[n]}(x, y) = sum_{k<=n} A_k(x) D_k(y), p x p.
template <class T>
Matrix<T> mixed_kernel_D(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& x, const T& y) {
  Matrix<T> K = Matrix<T>::Zero(f.p, f.p);
  for (Eigen::Index k = 0; k <= n; ++k) K += f.A[k](x) * cauchy_D(f, mu, k, y);
  return K;
}

// Integral forms: K_C(x,y) = int d mu(t) K(t,y) / (x - t), K_D(x,y) = int K(x,t) d mu(t) / (y - t).
template <class T>
Matrix<T> mixed_kernel_C_integral(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& x,
                                  const T& y) {
  MatPoly<T> Kt(f.p, f.q);
  for (Eigen::Index k = 0; k <= n; ++k) Kt += f.A[k] * MatPoly<T>::constant(f.B[k](y));
  return integrate_left(mu, Kt, cauchy_kernel(x, 0));
}

template <class T>
Matrix<T> mixed_kernel_D_integral(const Family<T>& f, const MatrixMeasure<T>& mu, Eigen::Index n, const T& x,
                                  const T& y) {
  MatPoly<T> Kt(f.p, f.q);
  for (Eigen::Index k = 0; k <= n; ++k) Kt += MatPoly<T>::constant(f.A[k](x)) * f.B[k];
  return integrate_right(Kt, mu, cauchy_kernel(y, 0));
}

// Rescale a family to the other normalization (same measure).
template <class T>
Family<T> renormalize(const Family<T>& f, Normalization target) {
  if (f.norm == target) return f;
  Family<T> g = f;
  g.norm = target;
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    if (target == Normalization::AMonic) {
      g.B[k] = f.B[k] * T(T(1) / f.H(k));
      g.A[k] = f.A[k] * f.H(k);
    } else {
      g.B[k] = f.B[k] * f.H(k);
      g.A[k] = f.A[k] * T(T(1) / f.H(k));
    }
  }
  return g;
}

}  // namespace mopkit

#endif
