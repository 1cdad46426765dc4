#ifndef MOPKIT_MATRIX_POLY_HPP
#define MOPKIT_MATRIX_POLY_HPP

#include <string>
#include <vector>

#include "mopkit/numerics.hpp"
#include "mopkit/poly.hpp"

namespace mopkit {

// Rectangular matrix polynomial sum_k C_k x^k. Trailing zero coefficients are dropped.
template <class T>
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}
  MatPoly(Eigen::Index rows, Eigen::Index cols, std::vector<Matrix<T>> c)
      : rows_(rows), cols_(cols), c_(std::move(c)) {
    for (const auto& m : c_)
      if (m.rows() != rows_ || m.cols() != cols_) throw DimensionMismatch("MatPoly coefficient shape");
    trim();
  }
  static MatPoly constant(const Matrix<T>& m) { return MatPoly(m.rows(), m.cols(), {m}); }
  static MatPoly identity(Eigen::Index n) { return constant(Matrix<T>::Identity(n, n)); }

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Matrix<T>>& coeffs() const { return c_; }
  Matrix<T> coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Matrix<T>::Zero(rows_, cols_);
    return c_[k];
  }

  Poly<T> entry(Eigen::Index i, Eigen::Index j) const {
    std::vector<T> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k](i, j);
    return Poly<T>(std::move(v));
  }
  void set_entry(Eigen::Index i, Eigen::Index j, const Poly<T>& p) {
    if (p.degree() + 1 > static_cast<int>(c_.size())) c_.resize(p.degree() + 1, Matrix<T>::Zero(rows_, cols_));
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k](i, j) = p.coeff(static_cast<int>(k));
    trim();
  }

  Matrix<T> operator()(const T& x) const {
    Matrix<T> acc = Matrix<T>::Zero(rows_, cols_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it).eval();
    return acc;
  }

  // Coefficients of P(a + h) in h up to order-1, i.e. P^{(k)}(a)/k!.
  std::vector<Matrix<T>> taylor(const T& a, int order) const {
    std::vector<Matrix<T>> out(order, Matrix<T>::Zero(rows_, cols_));
    for (Eigen::Index i = 0; i < rows_; ++i)
      for (Eigen::Index j = 0; j < cols_; ++j) {
        auto t = entry(i, j).taylor(a, order);
        for (int k = 0; k < order; ++k) out[k](i, j) = t[k];
      }
    return out;
  }

  MatPoly derivative(int order = 1) const {
    MatPoly d(rows_, cols_);
    for (Eigen::Index i = 0; i < rows_; ++i)
      for (Eigen::Index j = 0; j < cols_; ++j) d.set_entry(i, j, entry(i, j).derivative(order));
    return d;
  }

  MatPoly transpose() const {
    std::vector<Matrix<T>> t;
    for (const auto& m : c_) t.push_back(m.transpose());
    return MatPoly(cols_, rows_, std::move(t));
  }

  MatPoly& operator+=(const MatPoly& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Matrix<T>::Zero(rows_, cols_));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  MatPoly& operator-=(const MatPoly& o) {
    check_same(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Matrix<T>::Zero(rows_, cols_));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  MatPoly& operator*=(const T& s) {
    for (auto& m : c_) m *= s;
    trim();
    return *this;
  }
  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator*(MatPoly a, const T& s) { return a *= s; }
  friend MatPoly operator*(const T& s, MatPoly a) { return a *= s; }

  friend MatPoly operator*(const MatPoly& a, const MatPoly& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("MatPoly product shape");
    if (a.is_zero() || b.is_zero()) return MatPoly(a.rows_, b.cols_);
    std::vector<Matrix<T>> r(a.c_.size() + b.c_.size() - 1, Matrix<T>::Zero(a.rows_, b.cols_));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return MatPoly(a.rows_, b.cols_, std::move(r));
  }
  friend MatPoly operator*(const MatPoly& a, const Matrix<T>& m) { return a * MatPoly::constant(m); }
  friend MatPoly operator*(const Matrix<T>& m, const MatPoly& a) { return MatPoly::constant(m) * a; }
  friend MatPoly operator*(const MatPoly& a, const Poly<T>& s) {
    MatPoly r(a.rows_, a.cols_);
    for (int k = 0; k <= s.degree(); ++k) {
      std::vector<Matrix<T>> shifted(k, Matrix<T>::Zero(a.rows_, a.cols_));
      for (const auto& m : a.c_) shifted.push_back(m * s.coeff(k));
      r += MatPoly(a.rows_, a.cols_, std::move(shifted));
    }
    return r;
  }

  friend bool operator==(const MatPoly& a, const MatPoly& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.c_ == b.c_;
  }

  T max_abs_coeff() const {
    T m(0);
    for (const auto& c : c_) {
      T v = max_abs(c);
      if (v > m) m = v;
    }
    return m;
  }

 private:
  void check_same(const MatPoly& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("MatPoly sum shape");
  }
  void trim() {
    while (!c_.empty() && c_.back().isZero()) c_.pop_back();
  }
  Eigen::Index rows_ = 0, cols_ = 0;
  std::vector<Matrix<T>> c_;
};

template <class T>
Matrix<T> evaluate(const MatPoly<T>& P, const T& x) {
  return P(x);
}

// P^{(k)}(x) / k! for k = 0..order-1.
template <class T>
std::vector<Matrix<T>> eval_derive(const MatPoly<T>& P, const T& x, int order) {
  return P.taylor(x, order);
}

template <class T>
MatPoly<T> from_entries(const std::vector<std::vector<Poly<T>>>& e) {
  const Eigen::Index r = static_cast<Eigen::Index>(e.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(e[0].size()) : 0;
  MatPoly<T> P(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) P.set_entry(i, j, e[i][j]);
  return P;
}

template <class T>
using PolyGrid = std::vector<std::vector<Poly<T>>>;

template <class T>
PolyGrid<T> to_grid(const MatPoly<T>& P) {
  PolyGrid<T> g(P.rows(), std::vector<Poly<T>>(P.cols()));
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) g[i][j] = P.entry(i, j);
  return g;
}

namespace detail {

template <class T>
Poly<T> grid_det(const PolyGrid<T>& g, std::vector<int>& cols, int row) {
  const int n = static_cast<int>(g.size());
  if (row == n) return Poly<T>::constant(T(1));
  Poly<T> acc;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (!g[row][c].is_zero()) {
      cols.erase(cols.begin() + k);
      Poly<T> minor = grid_det(g, cols, row + 1);
      cols.insert(cols.begin() + k, c);
      Poly<T> term = g[row][c] * minor;
      if (sign > 0) acc += term; else acc -= term;
    }
    sign = -sign;
  }
  return acc;
}

template <class T>
PolyGrid<T> grid_minor(const PolyGrid<T>& g, int skip_r, int skip_c) {
  PolyGrid<T> m;
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    if (i == skip_r) continue;
    std::vector<Poly<T>> row;
    for (int j = 0; j < static_cast<int>(g[i].size()); ++j)
      if (j != skip_c) row.push_back(g[i][j]);
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace detail

// Cofactor expansion; exact on the rational backend. Sizes here stay small.
template <class T>
Poly<T> determinant(const PolyGrid<T>& g) {
  std::vector<int> cols(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) cols[i] = static_cast<int>(i);
  return detail::grid_det(g, cols, 0);
}

template <class T>
Poly<T> determinant(const MatPoly<T>& P) {
  if (P.rows() != P.cols()) throw DimensionMismatch("determinant of a non-square matrix polynomial");
  return determinant(to_grid(P));
}

template <class T>
MatPoly<T> adjugate(const MatPoly<T>& P) {
  const int n = static_cast<int>(P.rows());
  PolyGrid<T> g = to_grid(P);
  PolyGrid<T> adj(n, std::vector<Poly<T>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly<T> c = n == 1 ? Poly<T>::constant(T(1)) : determinant(detail::grid_minor(g, j, i));
      adj[i][j] = ((i + j) % 2 == 0) ? c : -c;
    }
  return from_entries(adj);
}

// Entrywise exact division by a scalar polynomial.
template <class T>
MatPoly<T> exact_div(const MatPoly<T>& P, const Poly<T>& d) {
  MatPoly<T> Q(P.rows(), P.cols());
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) Q.set_entry(i, j, exact_div(P.entry(i, j), d));
  return Q;
}

// X(x) P(x)^{-1}, requiring the result to be polynomial.
template <class T>
MatPoly<T> right_divide(const MatPoly<T>& X, const MatPoly<T>& P) {
  return exact_div(X * adjugate(P), determinant(P));
}

// P(x)^{-1} X(x), requiring the result to be polynomial.
template <class T>
MatPoly<T> left_divide(const MatPoly<T>& P, const MatPoly<T>& X) {
  return exact_div(adjugate(P) * X, determinant(P));
}

enum class LeadingCondition { C1, C2_1, C2_2 };

struct LeadingReport {
  bool ok = false;
  int N = 0;       // degree
  int M = 0;       // degree of the determinant
  int defect = 0;  // r or l
  std::string message;
};

// C1: invertible leading coefficient. C2.1 / C2.2: shifted identity leading blocks with
// defect r (resp. l), which makes the outer band of P(Lambda^T) (resp. P(Lambda)) all ones.
template <class T>
LeadingReport leading_check(const MatPoly<T>& P, LeadingCondition cond, int defect = 0) {
  LeadingReport rep;
  const Eigen::Index s = P.rows();
  rep.N = P.degree();
  rep.defect = defect;
  Poly<T> det = determinant(P);
  rep.M = det.degree();
  if (P.is_zero() || s != P.cols()) {
    rep.message = "zero or non-square matrix polynomial";
    return rep;
  }
  const Matrix<T> top = P.coeff(rep.N);
  const Matrix<T> next = P.coeff(rep.N - 1);
  const Eigen::Index d = defect;
  if (d < 0 || d >= s || (d > 0 && rep.N < 1)) {
    rep.message = "defect out of range";
    return rep;
  }
  if (cond == LeadingCondition::C1) {
    rep.ok = !is_zero(determinant(top));
    rep.message = rep.ok ? "ok" : "leading coefficient is singular";
    return rep;
  }
  Matrix<T> want_top = Matrix<T>::Zero(s, s);
  bool ok_next = true;
  if (cond == LeadingCondition::C2_1) {
    want_top.block(0, d, s - d, s - d).setIdentity();
    if (d > 0) ok_next = next.block(s - d, 0, d, d) == Matrix<T>::Identity(d, d);
  } else {
    want_top.block(d, 0, s - d, s - d).setIdentity();
    if (d > 0) ok_next = next.block(0, s - d, d, d) == Matrix<T>::Identity(d, d);
  }
  const bool ok_top = top == want_top;
  const bool ok_deg = rep.M == rep.N * static_cast<int>(s) - defect;
  rep.ok = ok_top && ok_next && ok_deg;
  if (!ok_top) rep.message = "leading coefficient does not have the shifted identity form";
  else if (!ok_next) rep.message = "subleading coefficient lacks the identity block";
  else if (!ok_deg) rep.message = "determinant degree differs from N*size - defect";
  else rep.message = "ok";
  return rep;
}

// (P(x) - P(y)) / (x - y) = sum_{a,b} C[a][b] x^a y^b.
template <class T>
struct Bivariate {
  Eigen::Index rows = 0, cols = 0;
  std::vector<std::vector<Matrix<T>>> c;

  Matrix<T> operator()(const T& x, const T& y) const {
    Matrix<T> acc = Matrix<T>::Zero(rows, cols);
    T xa(1);
    for (const auto& row : c) {
      T yb(1);
      for (const auto& m : row) {
        acc += m * (xa * yb);
        yb *= y;
      }
      xa *= x;
    }
    return acc;
  }
  // Coefficient matrix polynomial in y for fixed x.
  MatPoly<T> in_y(const T& x) const {
    std::vector<Matrix<T>> out;
    T xa(1);
    for (const auto& row : c) {
      if (out.size() < row.size()) out.resize(row.size(), Matrix<T>::Zero(rows, cols));
      for (std::size_t b = 0; b < row.size(); ++b) out[b] += row[b] * xa;
      xa *= x;
    }
    return MatPoly<T>(rows, cols, std::move(out));
  }
};

template <class T>
Bivariate<T> difference_quotient(const MatPoly<T>& P) {
  Bivariate<T> q;
  q.rows = P.rows();
  q.cols = P.cols();
  const int N = P.degree();
  if (N < 1) return q;
  q.c.assign(N, std::vector<Matrix<T>>(N, Matrix<T>::Zero(P.rows(), P.cols())));
  for (int i = 1; i <= N; ++i)
    for (int a = 0; a < i; ++a) q.c[a][i - 1 - a] += P.coeff(i);
  return q;
}

enum class BandSide { RightOnLambdaT, LeftOnLambda };

// Scalar N x N truncation of P(Lambda_[s]^T) (block lower banded) or P(Lambda_[s]).
template <class T>
Matrix<T> band_embed(const MatPoly<T>& P, BandSide side, Eigen::Index N) {
  const Eigen::Index s = P.rows();
  if (P.cols() != s) throw DimensionMismatch("band_embed needs a square matrix polynomial");
  Matrix<T> out = Matrix<T>::Zero(N, N);
  for (int l = 0; l <= P.degree(); ++l) {
    const Matrix<T> C = P.coeff(l);
    for (Eigen::Index b = 0; (b + l) * s < N; ++b)
      for (Eigen::Index a = 0; a < s; ++a)
        for (Eigen::Index c = 0; c < s; ++c) {
          Eigen::Index hi = (b + l) * s + a, lo = b * s + c;
          if (side == BandSide::RightOnLambdaT) {
            if (hi < N && lo < N) out(hi, lo) = C(a, c);
          } else {
            lo = b * s + a;
            hi = (b + l) * s + c;
            if (hi < N && lo < N) out(lo, hi) = C(a, c);
          }
        }
  }
  return out;
}

}  // namespace mopkit

#endif
