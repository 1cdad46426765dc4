#ifndef MOPKIT_SMITH_HPP
#define MOPKIT_SMITH_HPP

#include <vector>

#include "mopkit/matrix_poly.hpp"

namespace mopkit {

template <class T>
struct SmithForm {
  MatPoly<T> E;                   // unimodular
  std::vector<Poly<T>> invariant; // monic, d_i | d_{i+1}
  MatPoly<T> F;                   // unimodular
};

namespace detail {

template <class T>
class SmithReducer {
 public:
  explicit SmithReducer(const MatPoly<T>& P) : n_(static_cast<int>(P.rows())), D_(to_grid(P)) {
    E_ = identity();
    F_ = identity();
  }

  SmithForm<T> run() {
    for (int t = 0; t < n_; ++t) reduce_at(t);
    SmithForm<T> out{from_entries(E_), {}, from_entries(F_)};
    for (int i = 0; i < n_; ++i) out.invariant.push_back(D_[i][i]);
    return out;
  }

 private:
  PolyGrid<T> identity() const {
    PolyGrid<T> g(n_, std::vector<Poly<T>>(n_));
    for (int i = 0; i < n_; ++i) g[i][i] = Poly<T>::constant(T(1));
    return g;
  }

  // P = E D F is kept invariant by applying inverse operations to E and F.
  void swap_rows(int i, int j) {
    std::swap(D_[i], D_[j]);
    for (int r = 0; r < n_; ++r) std::swap(E_[r][i], E_[r][j]);
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < n_; ++r) std::swap(D_[r][i], D_[r][j]);
    std::swap(F_[i], F_[j]);
  }
  // row_i += f row_j
  void add_row(int i, int j, const Poly<T>& f) {
    for (int c = 0; c < n_; ++c) D_[i][c] += f * D_[j][c];
    for (int r = 0; r < n_; ++r) E_[r][j] -= E_[r][i] * f;
  }
  // col_i += f col_j
  void add_col(int i, int j, const Poly<T>& f) {
    for (int r = 0; r < n_; ++r) D_[r][i] += D_[r][j] * f;
    for (int c = 0; c < n_; ++c) F_[j][c] -= f * F_[i][c];
  }
  void scale_row(int i, const T& s) {
    for (int c = 0; c < n_; ++c) D_[i][c] *= s;
    for (int r = 0; r < n_; ++r) E_[r][i] *= T(T(1) / s);
  }

  void reduce_at(int t) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = t; i < n_; ++i)
        for (int j = t; j < n_; ++j)
          if (!D_[i][j].is_zero() && (bi < 0 || D_[i][j].degree() < D_[bi][bj].degree())) {
            bi = i;
            bj = j;
          }
      if (bi < 0) return;
      if (bi != t) swap_rows(bi, t);
      if (bj != t) swap_cols(bj, t);
      bool clean = true;
      for (int i = t + 1; i < n_; ++i) {
        if (D_[i][t].is_zero()) continue;
        auto q = divmod(D_[i][t], D_[t][t]).first;
        add_row(i, t, -q);
        if (!D_[i][t].is_zero()) clean = false;
      }
      for (int j = t + 1; j < n_; ++j) {
        if (D_[t][j].is_zero()) continue;
        auto q = divmod(D_[t][j], D_[t][t]).first;
        add_col(j, t, -q);
        if (!D_[t][j].is_zero()) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < n_ && bad < 0; ++i)
        for (int j = t + 1; j < n_; ++j)
          if (!divmod(D_[i][j], D_[t][t]).second.is_zero()) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        add_row(t, bad, Poly<T>::constant(T(1)));
        continue;
      }
      scale_row(t, T(T(1) / D_[t][t].lead()));
      return;
    }
  }

  int n_;
  PolyGrid<T> D_, E_, F_;
};

}  // namespace detail

// P = E diag(d_1, ..., d_n) F over the rationals.
template <class T>
SmithForm<T> smith_form(const MatPoly<T>& P) {
  if constexpr (!ScalarTraits<T>::exact) {
    throw FloatSmithUnsupported("Smith form needs exact arithmetic");
  } else {
    if (P.rows() != P.cols()) throw DimensionMismatch("Smith form of a non-square matrix polynomial");
    return detail::SmithReducer<T>(P).run();
  }
}

// Exponents of (x - rho) in the invariant factors, nonzero ones, largest first.
template <class T>
std::vector<int> smith_multiplicities(const SmithForm<T>& S, const T& rho) {
  std::vector<int> out;
  const Poly<T> lin = Poly<T>::linear_root(rho);
  for (const auto& d : S.invariant) {
    if (d.is_zero()) continue;
    int m = 0;
    Poly<T> cur = d;
    while (true) {
      auto [q, r] = divmod(cur, lin);
      if (!r.is_zero()) break;
      cur = q;
      ++m;
    }
    if (m > 0) out.push_back(m);
  }
  std::sort(out.begin(), out.end(), std::greater<int>());
  return out;
}

}  // namespace mopkit

#endif
