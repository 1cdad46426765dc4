#ifndef MOPKIT_MOMENTS_HPP
#define MOPKIT_MOMENTS_HPP

#include <ostream>

#include "mopkit/measures.hpp"

namespace mopkit {

// M_{ij} = int x^{floor(i/q)} x^{floor(j/p)} d mu_{i mod q, j mod p}
template <class T>
Matrix<T> build_moment_matrix(const MatrixMeasure<T>& mu, Eigen::Index rows, Eigen::Index cols) {
  const Eigen::Index q = mu.q(), p = mu.p();
  Matrix<T> M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& e = mu.entry(i % q, j % p);
      M(i, j) = e.empty() ? T(0) : mu.moment(i % q, j % p, static_cast<int>(i / q + j / p));
    }
  return M;
}

template <class T>
Matrix<T> build_moment_matrix(const MatrixMeasure<T>& mu, Eigen::Index n) {
  return build_moment_matrix(mu, n, n);
}

// Block shift Lambda_[r] truncated to N x N: ones on the r-th superdiagonal.
template <class T>
Matrix<T> shift_matrix(Eigen::Index r, Eigen::Index N) {
  Matrix<T> S = Matrix<T>::Zero(N, N);
  for (Eigen::Index i = 0; i + r < N; ++i) S(i, i + r) = T(1);
  return S;
}

// Rows/cols of a product A*B whose entries do not depend on the truncation:
// row i of A*B is exact when A's row i has no support past the shared dimension.
struct Window {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
};

// Exact window of M~ R(Lambda^T) - L(Lambda) M when both moment matrices are n x n.
inline Window moment_relation_window(Eigen::Index n, Eigen::Index q, Eigen::Index p, int NL, int NR) {
  // row i of L(Lambda) M uses rows up to (floor(i/q) + NL) q + q - 1 of M
  Window w;
  w.rows = std::max<Eigen::Index>(0, (n / q - NL) * q);
  w.cols = std::max<Eigen::Index>(0, (n / p - NR) * p);
  return w;
}

// Standard: M~ R(Lambda_p^T) - L(Lambda_q) M. Dual: L(Lambda_q) M~ - M R(Lambda_p^T).
template <class T>
Matrix<T> moment_relation_residual(const Matrix<T>& Mt, const Matrix<T>& M, const MatPoly<T>& L,
                                   const MatPoly<T>& R, Orientation o) {
  const Eigen::Index n = M.rows();
  const Eigen::Index q = L.rows(), p = R.rows();
  const Matrix<T> Rb = band_embed(R, BandSide::RightOnLambdaT, n);
  const Matrix<T> Lb = band_embed(L, BandSide::LeftOnLambda, n);
  Window w = moment_relation_window(n, q, p, std::max(L.degree(), 0), std::max(R.degree(), 0));
  Matrix<T> res = (o == Orientation::Standard) ? Matrix<T>(Mt * Rb - Lb * M) : Matrix<T>(Lb * Mt - M * Rb);
  return res.topLeftCorner(w.rows, w.cols);
}

template <class T>
void write_csv(std::ostream& os, const Matrix<T>& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) os << ',';
      os << to_string(M(i, j));
    }
    os << '\n';
  }
}

}  // namespace mopkit

#endif
