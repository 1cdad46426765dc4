#ifndef MOPKIT_NUMERICS_HPP
#define MOPKIT_NUMERICS_HPP

#include <vector>

#include "mopkit/poly.hpp"
#include "mopkit/scalar.hpp"

namespace mopkit {

// Rising factorial (x)_n = x (x+1) ... (x+n-1), integer n >= 0.
template <class T>
T pochhammer(const T& x, int n) {
  T r(1);
  for (int i = 0; i < n; ++i) r *= x + T(i);
  return r;
}

// x^n for integer n, negative n allowed when x != 0.
template <class T>
T ipow(const T& x, int n) {
  T r(1), b = n < 0 ? T(T(1) / x) : x;
  for (int e = n < 0 ? -n : n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

template <class T>
T factorial(int n) {
  T r(1);
  for (int i = 2; i <= n; ++i) r *= T(i);
  return r;
}

template <class T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  return factorial<T>(n) / (factorial<T>(k) * factorial<T>(n - k));
}

inline BigFloat gamma_fn(const BigFloat& x) {
  BigFloat r;
  mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

// (x)_y = Gamma(x + y) / Gamma(x) for real y.
inline BigFloat pochhammer_real(const BigFloat& x, const BigFloat& y) {
  return gamma_fn(x + y) / gamma_fn(x);
}

template <class T>
struct LduFactors {
  Matrix<T> L;  // unit lower triangular
  Vector<T> D;  // pivots
  Matrix<T> U;  // unit upper triangular
};

// M = L diag(D) U with no pivoting; a vanishing pivot is reported, never skipped.
template <class T>
LduFactors<T> lu_nopivot(const Matrix<T>& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw DimensionMismatch("lu_nopivot needs a square matrix");
  const T scale = max_abs(M);
  Matrix<T> A = M;
  LduFactors<T> f{Matrix<T>::Identity(n, n), Vector<T>(n), Matrix<T>::Identity(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const T piv = A(k, k);
    if (ScalarTraits<T>::negligible(piv, scale)) throw SingularLeadingMinor(k);
    f.D(k) = piv;
    for (Eigen::Index j = k + 1; j < n; ++j) f.U(k, j) = A(k, j) / piv;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const T lik = A(i, k) / piv;
      f.L(i, k) = lik;
      if (lik == 0) continue;
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) -= lik * A(k, j);
    }
  }
  return f;
}

namespace detail {

// Row echelon elimination with row pivoting. Exact: first nonzero; float: largest.
template <class T>
Eigen::Index choose_pivot(const Matrix<T>& A, Eigen::Index col, Eigen::Index from, const T& scale) {
  Eigen::Index best = -1;
  T best_abs(0);
  for (Eigen::Index i = from; i < A.rows(); ++i) {
    if (ScalarTraits<T>::negligible(A(i, col), scale)) continue;
    if constexpr (ScalarTraits<T>::exact) return i;
    T a = abs_value(A(i, col));
    if (best < 0 || a > best_abs) {
      best = i;
      best_abs = a;
    }
  }
  return best;
}

}  // namespace detail

template <class T>
T determinant(const Matrix<T>& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw DimensionMismatch("determinant needs a square matrix");
  if (n == 0) return T(1);
  const T scale = max_abs(M);
  Matrix<T> A = M;
  T det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = detail::choose_pivot(A, k, k, scale);
    if (p < 0) return T(0);
    if (p != k) {
      A.row(p).swap(A.row(k));
      det = -det;
    }
    det *= A(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (A(i, k) == 0) continue;
      const T f = A(i, k) / A(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      A(i, k) = 0;
    }
  }
  return det;
}

// Solves A X = B. Row pivoting is used here since a zero pivot must mean det A = 0.
template <class T>
Matrix<T> solve_linear(const Matrix<T>& Ain, const Matrix<T>& Bin) {
  const Eigen::Index n = Ain.rows();
  if (Ain.cols() != n || Bin.rows() != n) throw DimensionMismatch("solve_linear shape mismatch");
  const T scale = max_abs(Ain);
  Matrix<T> A = Ain, B = Bin;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = detail::choose_pivot(A, k, k, scale);
    if (p < 0) throw SingularSystem("singular coefficient matrix at column " + std::to_string(k));
    if (p != k) {
      A.row(p).swap(A.row(k));
      B.row(p).swap(B.row(k));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (A(i, k) == 0) continue;
      const T f = A(i, k) / A(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) -= f * B(k, j);
      A(i, k) = 0;
    }
  }
  Matrix<T> X(n, B.cols());
  for (Eigen::Index i = n - 1; i >= 0; --i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) {
      T acc = B(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) acc -= A(i, k) * X(k, j);
      X(i, j) = acc / A(i, i);
    }
  return X;
}

template <class T>
Vector<T> solve_linear(const Matrix<T>& A, const Vector<T>& b) {
  Matrix<T> B = b;
  return solve_linear(A, B).col(0);
}

template <class T>
struct Echelon {
  Matrix<T> R;                       // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <class T>
Echelon<T> rref(const Matrix<T>& M) {
  const T scale = max_abs(M);
  Echelon<T> e{M, {}};
  Matrix<T>& A = e.R;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < A.cols() && row < A.rows(); ++col) {
    Eigen::Index p = detail::choose_pivot(A, col, row, scale);
    if (p < 0) {
      for (Eigen::Index i = row; i < A.rows(); ++i) A(i, col) = 0;
      continue;
    }
    A.row(p).swap(A.row(row));
    const T piv = A(row, col);
    for (Eigen::Index j = col; j < A.cols(); ++j) A(row, j) /= piv;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, col) == 0) continue;
      const T f = A(i, col);
      for (Eigen::Index j = col; j < A.cols(); ++j) A(i, j) -= f * A(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

template <class T>
Eigen::Index rank(const Matrix<T>& M) {
  return static_cast<Eigen::Index>(rref(M).pivots.size());
}

// Basis of ker M: one column per free variable, that variable set to 1, others 0.
template <class T>
Matrix<T> nullspace(const Matrix<T>& M) {
  Echelon<T> e = rref(M);
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < M.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<T> N = Matrix<T>::Zero(M.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    N(free[k], k) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) N(e.pivots[r], k) = -e.R(r, free[k]);
  }
  return N;
}

// Particular solution of a consistent system with every free variable set to 0.
template <class T>
Vector<T> solve_particular(const Matrix<T>& A, const Vector<T>& b) {
  Matrix<T> aug(A.rows(), A.cols() + 1);
  aug << A, b;
  Echelon<T> e = rref(aug);
  Vector<T> x = Vector<T>::Zero(A.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == A.cols()) throw SingularSystem("inconsistent linear system");
    x(e.pivots[r]) = e.R(r, A.cols());
  }
  return x;
}

}  // namespace mopkit

#endif
