#ifndef MOPKIT_UVAROV_HPP
#define MOPKIT_UVAROV_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mopkit/biorth.hpp"

namespace mopkit {

// Standard: d mu~ R = L d mu (+ masses at the eigenvalues of R).
// Dual:     L d mu~ = d mu R (+ masses at the eigenvalues of L).
template <class T>
struct PerturbationBundle {
  MatPoly<T> L, R;
  Orientation orientation = Orientation::Standard;
  std::vector<MassTerm<T>> masses;
  std::vector<SpectralPoint<T>> specL, specR;
  int ML = 0, MR = 0;
};

template <class T>
PerturbationBundle<T> make_bundle(MatPoly<T> L, MatPoly<T> R, Orientation o, std::vector<MassTerm<T>> masses,
                                  std::vector<SpectralPoint<T>> specL, std::vector<SpectralPoint<T>> specR) {
  PerturbationBundle<T> b{std::move(L), std::move(R), o, std::move(masses), std::move(specL), std::move(specR)};
  b.ML = determinant(b.L).degree();
  b.MR = determinant(b.R).degree();
  if (b.ML < 0 || b.MR < 0) throw SingularSystem("perturbation polynomial is not regular");
  auto total = [](const auto& spec) {
    int t = 0;
    for (const auto& s : spec) t += s.multiplicity;
    return t;
  };
  if (total(b.specL) != b.ML || total(b.specR) != b.MR)
    throw MissingSpectralData("spectral data does not match deg det");
  return b;
}

// Exact spectra (rational backend).
template <class T>
PerturbationBundle<T> make_bundle(MatPoly<T> L, MatPoly<T> R, Orientation o = Orientation::Standard,
                                  std::vector<MassTerm<T>> masses = {}) {
  auto sl = determinant(L).degree() > 0 ? spectral_data(L) : std::vector<SpectralPoint<T>>{};
  auto sr = determinant(R).degree() > 0 ? spectral_data(R) : std::vector<SpectralPoint<T>>{};
  return make_bundle(std::move(L), std::move(R), o, std::move(masses), std::move(sl), std::move(sr));
}

// Designed spectra (float backend, or eigenvalues known by construction).
template <class T>
PerturbationBundle<T> make_bundle(MatPoly<T> L, MatPoly<T> R, Orientation o, std::vector<MassTerm<T>> masses,
                                  const std::vector<Eigenvalue<T>>& eigL, const std::vector<Eigenvalue<T>>& eigR) {
  auto sl = spectral_data(L, eigL);
  auto sr = spectral_data(R, eigR);
  return make_bundle(std::move(L), std::move(R), o, std::move(masses), std::move(sl), std::move(sr));
}

template <class T>
MatrixMeasure<T> perturbed_measure(const PerturbationBundle<T>& b, const MatrixMeasure<T>& mu) {
  return perturb_measure(mu, b.L, b.R, b.masses, b.orientation, b.specR, b.specL);
}

// The dual problem on mu is the standard problem on mu^T with L_s = R^T, R_s = L^T, xi_s = xi^T.
template <class T>
PerturbationBundle<T> transpose_bundle(const PerturbationBundle<T>& b) {
  PerturbationBundle<T> s;
  s.L = b.R.transpose();
  s.R = b.L.transpose();
  s.orientation = b.orientation == Orientation::Standard ? Orientation::Dual : Orientation::Standard;
  for (const auto& m : b.masses) s.masses.push_back({m.point, m.chain, m.pos, m.xi.transpose()});
  auto swap_sides = [](const std::vector<SpectralPoint<T>>& in) {
    std::vector<SpectralPoint<T>> out;
    for (const auto& p : in) out.push_back({p.value, p.multiplicity, p.left, p.right});
    return out;
  };
  s.specL = swap_sides(b.specR);
  s.specR = swap_sides(b.specL);
  s.ML = b.MR;
  s.MR = b.ML;
  return s;
}

// Family of mu^T from a family of mu: B_s = A^T, A_s = B^T, normalizations swap.
template <class T>
Family<T> transpose_family(const Family<T>& f) {
  Family<T> g;
  g.q = f.p;
  g.p = f.q;
  g.H = f.H;
  g.norm = f.norm == Normalization::BMonic ? Normalization::AMonic : Normalization::BMonic;
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    g.B.push_back(f.A[k].transpose());
    g.A.push_back(f.B[k].transpose());
  }
  return g;
}

enum class LedgerSide { L, R };

// One column of the spectral ledger: position `pos` of chain `chain` at point `point`.
struct LedgerColumn {
  LedgerSide side = LedgerSide::L;
  int point = 0, chain = 0, pos = 0;
};

// Banded connection matrix rows: row n is stored densely over columns 0..n+ML.
template <class T>
struct ConnectionMatrix {
  std::vector<RowVector<T>> rows;
  int ML = 0, MR = 0;
  T at(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || i >= static_cast<Eigen::Index>(rows.size()) || j < 0 || j >= rows[i].size()) return T(0);
    return rows[i](j);
  }
  Matrix<T> dense(Eigen::Index n_rows, Eigen::Index n_cols) const {
    Matrix<T> M = Matrix<T>::Zero(n_rows, n_cols);
    for (Eigen::Index i = 0; i < n_rows && i < static_cast<Eigen::Index>(rows.size()); ++i)
      for (Eigen::Index j = 0; j < rows[i].size() && j < n_cols; ++j) M(i, j) = rows[i](j);
    return M;
  }
};

// Two nonzero off-diagonal blocks of [Omega, Pi_{n-1}]:
// upper = Omega[0..n-1, n..n+ML-1] (enters with a minus sign), lower = Omega[n..n+MR-1, 0..n-1].
template <class T>
struct CommutatorBlocks {
  Matrix<T> upper, lower;
};

template <class T>
CommutatorBlocks<T> omega_commutator_window(const ConnectionMatrix<T>& W, Eigen::Index n) {
  CommutatorBlocks<T> c;
  c.upper = Matrix<T>::Zero(n, W.ML);
  c.lower = Matrix<T>::Zero(W.MR, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < W.ML; ++j) c.upper(i, j) = W.at(i, n + j);
  for (int i = 0; i < W.MR; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.lower(i, j) = W.at(n + i, j);
  return c;
}

// Perturbation engine in the standard orientation with B-monic base family.
template <class T>
class StandardEngine {
 public:
  StandardEngine(MatrixMeasure<T> mu, Family<T> fam, PerturbationBundle<T> b)
      : mu_(std::move(mu)), fam_(std::move(fam)), b_(std::move(b)) {
    if (b_.orientation != Orientation::Standard) throw DimensionMismatch("StandardEngine needs a standard bundle");
    if (fam_.norm != Normalization::BMonic) fam_ = renormalize(fam_, Normalization::BMonic);
    for (int i = 0; i < static_cast<int>(b_.specL.size()); ++i)
      for (int j = 0; j < static_cast<int>(b_.specL[i].right.size()); ++j)
        for (int m = 0; m < static_cast<int>(b_.specL[i].right[j].size()); ++m)
          cols_.push_back({LedgerSide::L, i, j, m});
    for (int i = 0; i < static_cast<int>(b_.specR.size()); ++i)
      for (int j = 0; j < static_cast<int>(b_.specR[i].right.size()); ++j)
        for (int m = 0; m < static_cast<int>(b_.specR[i].right[j].size()); ++m)
          cols_.push_back({LedgerSide::R, i, j, m});
    if (static_cast<int>(cols_.size()) != b_.ML + b_.MR)
      throw InconsistentMultiplicity("chain lengths do not add up to deg det L + deg det R");
    check_bands();
  }

  int ML() const { return b_.ML; }
  int MR() const { return b_.MR; }
  const std::vector<LedgerColumn>& columns() const { return cols_; }
  const Family<T>& base() const { return fam_; }
  const PerturbationBundle<T>& bundle() const { return b_; }
  const MatrixMeasure<T>& measure() const { return mu_; }

  // Largest n with a fully determined Omega row.
  Eigen::Index last_row() const { return fam_.size() - 1 - b_.ML; }

  // [h^m] B_k(lambda+h) u(lambda+h) for L columns, [h^m] (D_k - W_k)(rho+h) v(rho+h) for R columns.
  const RowVector<T>& ledger_row(Eigen::Index k) const {
    auto it = ledger_.find(k);
    if (it != ledger_.end()) return it->second;
    RowVector<T> g(cols_.size());
    RowVector<T> bpart = ledger_B(k);
    RowVector<T> dpart = ledger_D(k) - ledger_W(k);
    for (int c = 0; c < b_.ML; ++c) g(c) = bpart(c);
    for (int c = 0; c < b_.MR; ++c) g(b_.ML + c) = dpart(c);
    return ledger_.emplace(k, g).first->second;
  }

  RowVector<T> ledger_B(Eigen::Index k) const {
    require_index(k);
    RowVector<T> out(b_.ML);
    int c = 0;
    for (const auto& sp : b_.specL) {
      auto bt = fam_.B[k].taylor(sp.value, sp.multiplicity);
      for (const auto& ch : sp.right)
        for (int m = 0; m < static_cast<int>(ch.size()); ++m) {
          T acc(0);
          for (int i = 0; i <= m; ++i) acc += (bt[i] * ch[m - i])(0, 0);
          out(c++) = acc;
        }
    }
    return out;
  }

  RowVector<T> ledger_D(Eigen::Index k) const {
    require_index(k);
    RowVector<T> out(b_.MR);
    int c = 0;
    for (const auto& sp : b_.specR) {
      auto dt = cauchy_row_taylor(fam_.B[k], mu_, sp.value, sp.multiplicity);
      for (const auto& ch : sp.right)
        for (int m = 0; m < static_cast<int>(ch.size()); ++m) {
          T acc(0);
          for (int i = 0; i <= m; ++i) acc += (dt[i] * ch[m - i])(0, 0);
          out(c++) = acc;
        }
    }
    return out;
  }

  RowVector<T> ledger_W(Eigen::Index k) const {
    require_index(k);
    RowVector<T> out = RowVector<T>::Zero(b_.MR);
    int c = 0;
    for (int i = 0; i < static_cast<int>(b_.specR.size()); ++i) {
      const auto& sp = b_.specR[i];
      MatPoly<T> part = mass_part(k, i);
      auto wt = part.taylor(sp.value, sp.multiplicity);
      for (const auto& ch : sp.right)
        for (int m = 0; m < static_cast<int>(ch.size()); ++m) {
          T acc(0);
          for (int t = 0; t <= m; ++t) acc += (wt[t] * ch[m - t])(0, 0);
          out(c++) = acc;
        }
    }
    return out;
  }

  // I_{k,j} = int B_k d mu^ (X_[p])_j with mu^ = mu R^{-1} + masses (no L).
  T ledger_I(Eigen::Index k, Eigen::Index j) const {
    require_index(k);
    if (!mu_hat_) {
      const MatPoly<T> I = MatPoly<T>::identity(mu_.q());
      mu_hat_ = perturb_measure(mu_, I, b_.R, b_.masses, Orientation::Standard, b_.specR, {});
    }
    const Eigen::Index p = mu_.p();
    RowVector<T> v = integrate_row(fam_.B[k], *mu_hat_, RationalFn<T>::polynomial(Poly<T>::monomial(j / p)));
    return v(j % p);
  }

  // Entry (n, n+ML) of L(Lambda_[q]).
  T nu(Eigen::Index n) const {
    const Matrix<T> Lb = band_embed(b_.L, BandSide::LeftOnLambda, n + b_.ML + 1);
    return Lb(n, n + b_.ML);
  }

  // Linear system for Omega row n: rows of the ledger (or of [B | I] when n < MR).
  Matrix<T> system(Eigen::Index n) const {
    const int M = b_.ML + b_.MR;
    if (n >= b_.MR) {
      Matrix<T> G(M, M);
      for (int r = 0; r < M; ++r) G.row(r) = ledger_row(n - b_.MR + r);
      return G;
    }
    const Eigen::Index m = n + b_.ML;
    Matrix<T> G(m, m);
    for (Eigen::Index r = 0; r < m; ++r) G.row(r) = low_row(r, n);
    return G;
  }

  RowVector<T> system_rhs(Eigen::Index n) const {
    return n >= b_.MR ? ledger_row(n + b_.ML) : low_row(n + b_.ML, n);
  }

  Eigen::Index first_unknown(Eigen::Index n) const { return n >= b_.MR ? n - b_.MR : 0; }

  T tau(Eigen::Index n) const { return determinant(system(n)); }

  // Row n of Omega over columns 0..n+ML, with Omega_{n,n+ML} = nu_n.
  RowVector<T> omega_row(Eigen::Index n) const {
    auto it = omega_.find(n);
    if (it != omega_.end()) return it->second;
    const Matrix<T> G = system(n);
    const T v = nu(n);
    RowVector<T> row = RowVector<T>::Zero(n + b_.ML + 1);
    row(n + b_.ML) = v;
    if (G.rows() > 0) {
      Vector<T> rhs = -(system_rhs(n).transpose() * v);
      Vector<T> c;
      try {
        c = solve_linear(Matrix<T>(G.transpose()), rhs);
      } catch (const SingularSystem&) {
        throw SingularSystem("tau_" + std::to_string(n) + " = 0: Omega row " + std::to_string(n) + " is undetermined");
      }
      const Eigen::Index f = first_unknown(n);
      for (Eigen::Index i = 0; i < c.size(); ++i) row(f + i) = c(i);
    }
    return omega_.emplace(n, row).first->second;
  }

  ConnectionMatrix<T> omega(Eigen::Index n_rows) const {
    ConnectionMatrix<T> W;
    W.ML = b_.ML;
    W.MR = b_.MR;
    for (Eigen::Index n = 0; n < n_rows; ++n) W.rows.push_back(omega_row(n));
    return W;
  }

  // B~_n L = nu_n det[[G, B-col], [g_{n+ML}, B_{n+ML}]] / tau_n, expanded along the last column.
  MatPoly<T> typeII_times_L(Eigen::Index n) const {
    const Matrix<T> G = system(n);
    const RowVector<T> g = system_rhs(n);
    const Eigen::Index M = G.rows();
    const T t = determinant(G);
    if (is_zero(t)) throw SingularSystem("tau_" + std::to_string(n) + " = 0");
    Matrix<T> stacked(M + 1, M);
    stacked.topRows(M) = G;
    stacked.row(M) = g;
    const Eigen::Index f = first_unknown(n);
    MatPoly<T> acc(1, fam_.q);
    for (Eigen::Index r = 0; r <= M; ++r) {
      Matrix<T> minor(M, M);
      for (Eigen::Index i = 0, o = 0; i <= M; ++i)
        if (i != r) minor.row(o++) = stacked.row(i);
      T cof = determinant(minor);
      if ((r + M) % 2 != 0) cof = -cof;
      if (is_zero(cof)) continue;
      acc += fam_.B[r < M ? f + r : n + b_.ML] * cof;
    }
    return acc * T(nu(n) / t);
  }

  MatPoly<T> typeII(Eigen::Index n) const { return right_divide(typeII_times_L(n), b_.L); }

  // A~_m from the kernel determinant. ML >= 1: cut at n = m+1, last row replaced,
  // nu_m A~_m = -R det / tau_n. ML = 0: cut at n = m, first row replaced,
  // Omega_{m,m-MR} A~_m = R det / tau_m.
  MatPoly<T> typeI(Eigen::Index m) const {
    const bool shifted = b_.ML >= 1;
    const Eigen::Index n = shifted ? m + 1 : m;
    if (n < b_.MR) throw WindowError("type I formula needs n >= M_R");
    const int M = b_.ML + b_.MR;
    if (M == 0) return fam_.A[m];
    const Matrix<T> G = system(n);
    const T t = determinant(G);
    if (is_zero(t)) throw SingularSystem("tau_" + std::to_string(n) + " = 0");
    const Eigen::Index r = shifted ? M - 1 : 0;
    MatPoly<T> acc(fam_.p, 1);
    for (int c = 0; c < M; ++c) {
      Matrix<T> minor(M - 1, M - 1);
      for (int i = 0, oi = 0; i < M; ++i) {
        if (i == r) continue;
        for (int j = 0, oj = 0; j < M; ++j)
          if (j != c) minor(oi, oj++) = G(i, j);
        ++oi;
      }
      T cof = determinant(minor);
      if ((r + c) % 2 != 0) cof = -cof;
      if (is_zero(cof)) continue;
      acc += bottom_times_R(n, c) * cof;
    }
    const T denom = shifted ? T(-nu(m) * t) : T(omega_row(m)(m - b_.MR) * t);
    if (is_zero(denom)) throw SingularSystem("type I normalization vanishes at index " + std::to_string(m));
    return acc * T(T(1) / denom);
  }

  // R(x) times column c of the kernel row: R sum_{j<n} A_j g_{j,c} (+ R P_c for R columns).
  MatPoly<T> bottom_times_R(Eigen::Index n, int c) const {
    MatPoly<T> k(fam_.p, 1);
    for (Eigen::Index j = 0; j < n; ++j) {
      const T gj = ledger_row(j)(c);
      if (!is_zero(gj)) k += fam_.A[j] * gj;
    }
    MatPoly<T> out = b_.R * k;
    if (cols_[c].side == LedgerSide::R) out += pole_times_R(cols_[c]);
    return out;
  }

  // R(x) v_{<=m}(x) / (x - rho)^{m+1}, a polynomial because v is a right chain.
  MatPoly<T> pole_times_R(const LedgerColumn& col) const {
    const auto& sp = b_.specR[col.point];
    const auto& ch = sp.right[col.chain];
    const Poly<T> lin = Poly<T>::linear_root(sp.value);
    MatPoly<T> v(fam_.p, 1);
    for (int t = 0; t <= col.pos; ++t) v += MatPoly<T>::constant(Matrix<T>(ch[t])) * pow(lin, t);
    return exact_div(b_.R * v, pow(lin, col.pos + 1));
  }

 private:
  void require_index(Eigen::Index k) const {
    if (k < 0 || k >= fam_.size())
      throw WindowError("ledger index " + std::to_string(k) + " beyond the base family (size " +
                        std::to_string(fam_.size()) + ")");
  }

  RowVector<T> low_row(Eigen::Index k, Eigen::Index n) const {
    RowVector<T> r(b_.ML + n);
    if (b_.ML > 0) r.head(b_.ML) = ledger_B(k);
    for (Eigen::Index j = 0; j < n; ++j) r(b_.ML + j) = ledger_I(k, j);
    return r;
  }

  // sum over masses at point i of sum_a [h^a](B_k xi)(rho+h) w_{<=kk-a}(x) R(x) / (x-rho)^{kk-a+1}
  MatPoly<T> mass_part(Eigen::Index k, int point) const {
    MatPoly<T> out(1, mu_.p());
    const auto& sp = b_.specR[point];
    for (const auto& ms : b_.masses) {
      if (ms.point != point) continue;
      auto beta = (fam_.B[k] * ms.xi).taylor(sp.value, ms.pos + 1);
      for (int a = 0; a <= ms.pos; ++a)
        if (!is_zero(beta[a](0, 0))) out += mass_poly(point, ms.chain, ms.pos - a) * beta[a](0, 0);
    }
    return out;
  }

  const MatPoly<T>& mass_poly(int point, int chain, int m) const {
    auto key = std::make_tuple(point, chain, m);
    auto it = mass_poly_.find(key);
    if (it != mass_poly_.end()) return it->second;
    const auto& sp = b_.specR[point];
    const auto& w = sp.left.at(chain);
    const Poly<T> lin = Poly<T>::linear_root(sp.value);
    MatPoly<T> wm(1, mu_.p());
    for (int t = 0; t <= m; ++t) wm += MatPoly<T>::constant(Matrix<T>(w[t].transpose())) * pow(lin, t);
    return mass_poly_.emplace(key, exact_div(wm * b_.R, pow(lin, m + 1))).first->second;
  }

  // Omega has ML superdiagonals only when the outer band of L(Lambda) sits at distance ML.
  void check_bands() const {
    const Eigen::Index N = 4 * (b_.ML + b_.MR + mu_.q() + mu_.p()) + 4;
    const Matrix<T> Lb = band_embed(b_.L, BandSide::LeftOnLambda, N);
    const Matrix<T> Rb = band_embed(b_.R, BandSide::RightOnLambdaT, N);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        if (j - i > b_.ML && !is_zero(Lb(i, j)))
          throw ATViolation("L(Lambda) has a band wider than deg det L: check the leading form");
        if (i - j > b_.MR && !is_zero(Rb(i, j)))
          throw ATViolation("R(Lambda^T) has a band wider than deg det R: check the leading form");
      }
    for (Eigen::Index i = 0; i + b_.ML < N; ++i)
      if (is_zero(Lb(i, i + b_.ML))) throw ATViolation("outer band of L(Lambda) has a zero entry");
  }

  MatrixMeasure<T> mu_;
  Family<T> fam_;
  PerturbationBundle<T> b_;
  std::vector<LedgerColumn> cols_;
  mutable std::map<Eigen::Index, RowVector<T>> ledger_;
  mutable std::map<Eigen::Index, RowVector<T>> omega_;
  mutable std::map<std::tuple<int, int, int>, MatPoly<T>> mass_poly_;
  mutable std::optional<MatrixMeasure<T>> mu_hat_;
};

// Dual orientation through the transposed standard problem. The native dual normalization
// is A-monic: A~_n = (B~_{s,n})^T, B~_n = (A~_{s,n})^T, Omega = Omega_s^T.
template <class T>
class DualEngine {
 public:
  // Families come out A-monic (transposes of the B-monic standard families) unless `norm` asks otherwise.
  DualEngine(const MatrixMeasure<T>& mu, const Family<T>& fam, const PerturbationBundle<T>& b,
             Normalization norm = Normalization::AMonic)
      : s_(mu.transpose(), transpose_family(renormalize(fam, Normalization::AMonic)), transpose_bundle(b)),
        norm_(norm), q_(mu.q()) {
    if (b.orientation != Orientation::Dual) throw DimensionMismatch("DualEngine needs a dual bundle");
  }

  const StandardEngine<T>& transposed() const { return s_; }
  int ML() const { return s_.MR(); }
  int MR() const { return s_.ML(); }
  Eigen::Index last_row() const { return s_.last_row(); }

  T tau(Eigen::Index n) const { return s_.tau(n); }
  MatPoly<T> typeI(Eigen::Index n) const {
    MatPoly<T> a = s_.typeII(n).transpose();
    return norm_ == Normalization::AMonic ? a : MatPoly<T>(a * T(T(1) / pivot(n)));
  }
  MatPoly<T> typeII(Eigen::Index m) const {
    MatPoly<T> b = s_.typeI(m).transpose();
    return norm_ == Normalization::AMonic ? b : MatPoly<T>(b * pivot(m));
  }
  RowVector<T> omega_col(Eigen::Index n) const { return s_.omega_row(n); }

  // H~_m: reciprocal of the top step-line coefficient of the A-monic B~_m.
  T pivot(Eigen::Index m) const {
    MatPoly<T> b = s_.typeI(m).transpose();
    return T(1) / b.coeff(static_cast<int>(m / q_))(0, m % q_);
  }

 private:
  StandardEngine<T> s_;
  Normalization norm_;
  Eigen::Index q_;
};

// Ground truth: factorize the perturbed moment matrix directly.
template <class T>
Family<T> oracle_direct(const MatrixMeasure<T>& mut, Eigen::Index N, Normalization norm) {
  return family_from_measure(mut, N, norm);
}

// Omega from factor products on the exactly determined window:
// S~ L(Lambda) S^{-1}: rows n with n + band_L < N.
template <class T>
Matrix<T> omega_from_left_factors(const GaussBorel<T>& gt, const GaussBorel<T>& g, const MatPoly<T>& L,
                                  Eigen::Index rows) {
  const Eigen::Index N = g.size();
  const Matrix<T> Lb = band_embed(L, BandSide::LeftOnLambda, N);
  Matrix<T> W = gt.S * Lb * g.Sinv;
  return W.topRows(rows);
}

// H~ Sbar~^{-T} R(Lambda^T) Sbar^T H^{-1}: column m exact when m + band_R < N.
template <class T>
Matrix<T> omega_from_right_factors(const GaussBorel<T>& gt, const GaussBorel<T>& g, const MatPoly<T>& R,
                                   Eigen::Index cols) {
  const Eigen::Index N = g.size();
  const Matrix<T> Rb = band_embed(R, BandSide::RightOnLambdaT, N);
  Matrix<T> W = gt.H.asDiagonal() * gt.SbarTinv * Rb * g.Sbar.transpose();
  for (Eigen::Index j = 0; j < N; ++j) W.col(j) /= g.H(j);
  return W.leftCols(cols);
}

template <class T>
struct ResidualReport {
  T omegaB_minus_BL = T(0);
  T AOmega_minus_RA = T(0);
  T cauchy_D = T(0);
  T cauchy_C = T(0);
  T moments = T(0);
  Eigen::Index rows_checked = 0, cols_checked = 0;
  T max() const {
    T m = omegaB_minus_BL;
    for (const T& v : {AOmega_minus_RA, cauchy_D, cauchy_C, moments})
      if (v > m) m = v;
    return m;
  }
};

namespace detail {
template <class T>
T poly_residual(const MatPoly<T>& P) {
  return P.is_zero() ? T(0) : P.max_abs_coeff();
}

// int B(x) d mu(x) Q(x) for a 1 x q row B and a p x p matrix polynomial Q: 1 x p.
template <class T>
RowVector<T> pair_matrix(const MatPoly<T>& B, const MatrixMeasure<T>& mu, const MatPoly<T>& Q) {
  RowVector<T> out(Q.cols());
  for (Eigen::Index c = 0; c < Q.cols(); ++c) {
    std::vector<Matrix<T>> col;
    for (const auto& m : Q.coeffs()) col.push_back(m.col(c));
    out(c) = pair_integrate(B, mu, MatPoly<T>(Q.rows(), 1, std::move(col)));
  }
  return out;
}

// int d mu(x) Q(x) A(x) for a q x q matrix polynomial Q and p x 1 column A: q x 1.
template <class T>
Vector<T> pair_matrix_left(const MatPoly<T>& Q, const MatrixMeasure<T>& mu, const MatPoly<T>& A) {
  Vector<T> out(Q.rows());
  for (Eigen::Index r = 0; r < Q.rows(); ++r) {
    std::vector<Matrix<T>> row;
    for (const auto& m : Q.coeffs()) row.push_back(m.row(r));
    out(r) = pair_integrate(MatPoly<T>(1, Q.cols(), std::move(row)), mu, A);
  }
  return out;
}
}  // namespace detail

// Standard connection identities against the perturbed family `ft` (B-monic) of mu~.
template <class T>
ResidualReport<T> connection_residuals(const StandardEngine<T>& e, const MatrixMeasure<T>& mut, const Family<T>& ft,
                                       const std::vector<T>& probes) {
  ResidualReport<T> rep;
  const Family<T>& f = e.base();
  const auto& b = e.bundle();
  const Eigen::Index n_rows = std::min<Eigen::Index>(e.last_row() + 1, ft.size());
  ConnectionMatrix<T> W = e.omega(n_rows);
  auto upd = [](T& slot, const T& v) {
    if (v > slot) slot = v;
  };
  for (Eigen::Index n = 0; n < n_rows; ++n) {
    MatPoly<T> s(1, f.q);
    for (Eigen::Index k = 0; k <= n + e.ML(); ++k) s += f.B[k] * W.at(n, k);
    upd(rep.omegaB_minus_BL, detail::poly_residual(MatPoly<T>(s - ft.B[n] * b.L)));
  }
  rep.rows_checked = n_rows;
  // column m of A~ Omega uses rows m-ML..m+MR
  Eigen::Index n_cols = 0;
  for (Eigen::Index m = 0; m + e.MR() < n_rows; ++m, ++n_cols) {
    MatPoly<T> s(f.p, 1);
    for (Eigen::Index k = std::max<Eigen::Index>(0, m - e.ML()); k <= m + e.MR(); ++k) s += ft.A[k] * W.at(k, m);
    upd(rep.AOmega_minus_RA, detail::poly_residual(MatPoly<T>(s - b.R * f.A[m])));
  }
  rep.cols_checked = n_cols;
  const Bivariate<T> dqR = difference_quotient(b.R), dqL = difference_quotient(b.L);
  for (const T& z : probes) {
    const MatPoly<T> qR = dqR.c.empty() ? MatPoly<T>(b.R.rows(), b.R.cols()) : dqR.in_y(z);
    const MatPoly<T> qL = dqL.c.empty() ? MatPoly<T>(b.L.rows(), b.L.cols()) : dqL.in_y(z);
    const Matrix<T> Rz = b.R(z), Lz = b.L(z);
    for (Eigen::Index n = 0; n < n_rows; ++n) {
      RowVector<T> lhs = cauchy_row(ft.B[n], mut, z) * Rz - detail::pair_matrix(ft.B[n], mut, qR);
      RowVector<T> rhs = RowVector<T>::Zero(f.p);
      for (Eigen::Index k = 0; k <= n + e.ML(); ++k) rhs += cauchy_row(f.B[k], e.measure(), z) * W.at(n, k);
      upd(rep.cauchy_D, max_abs(Matrix<T>(lhs - rhs)));
    }
    for (Eigen::Index m = 0; m < n_cols; ++m) {
      Vector<T> lhs = Vector<T>::Zero(f.q);
      for (Eigen::Index k = std::max<Eigen::Index>(0, m - e.ML()); k <= m + e.MR(); ++k)
        lhs += cauchy_col(mut, ft.A[k], z) * W.at(k, m);
      Vector<T> rhs = Lz * cauchy_col(e.measure(), f.A[m], z) - detail::pair_matrix_left(qL, e.measure(), f.A[m]);
      upd(rep.cauchy_C, max_abs(Matrix<T>(lhs - rhs)));
    }
  }
  const Eigen::Index N = ft.size();
  const Matrix<T> res = moment_relation_residual(build_moment_matrix(mut, N), build_moment_matrix(e.measure(), N),
                                                 b.L, b.R, Orientation::Standard);
  rep.moments = res.size() ? max_abs(res) : T(0);
  return rep;
}

// Kernel connection residuals at (x, y), cut n:
//   K~ L(y) - R(x) K + A~(x) [Omega, Pi_{n-1}] B(y)
//   K~_D R(y) - R(x) K_D + A~(x) [Omega, Pi_{n-1}] D(y) - (R(x) - R(y)) / (x - y)     (n >= M_R)
//   L(x) K_C - K~_C L(y) - C~(x) [Omega, Pi_{n-1}] B(y) - (L(x) - L(y)) / (x - y)      (n >= M_L)
template <class T>
struct KernelResidual {
  T plain = T(0), mixed_D = T(0), mixed_C = T(0);
};

template <class T>
KernelResidual<T> kernel_residuals(const StandardEngine<T>& e, const MatrixMeasure<T>& mut, const Family<T>& ft,
                                   Eigen::Index n, const T& x, const T& y) {
  const Family<T>& f = e.base();
  const auto& b = e.bundle();
  const MatrixMeasure<T>& mu = e.measure();
  ConnectionMatrix<T> W = e.omega(n + e.MR());
  // commutator terms: sum_{i>=n, j<n} X_i Omega_ij Y_j - sum_{i<n, j>=n} X_i Omega_ij Y_j
  auto commutator = [&](auto X, auto Y, Eigen::Index rows, Eigen::Index cols) {
    Matrix<T> acc = Matrix<T>::Zero(rows, cols);
    for (Eigen::Index i = std::max<Eigen::Index>(0, n - e.ML()); i < n + e.MR(); ++i)
      for (Eigen::Index j = std::max<Eigen::Index>(0, n - e.MR()); j < n + e.ML(); ++j) {
        const T w = W.at(i, j);
        if (is_zero(w)) continue;
        if (i >= n && j < n) acc += X(i) * Y(j) * w;
        if (i < n && j >= n) acc -= X(i) * Y(j) * w;
      }
    return acc;
  };
  KernelResidual<T> out;
  const Matrix<T> Rx = b.R(x), Ry = b.R(y), Lx = b.L(x), Ly = b.L(y);
  auto At = [&](Eigen::Index i) { return Matrix<T>(ft.A[i](x)); };
  auto Bb = [&](Eigen::Index j) { return Matrix<T>(f.B[j](y)); };
  Matrix<T> r1 = cd_kernel(ft, n - 1, x, y) * Ly - Rx * cd_kernel(f, n - 1, x, y) +
                 commutator(At, Bb, f.p, f.q);
  out.plain = max_abs(r1);
  if (n >= e.MR()) {
    auto Dm = [&](Eigen::Index j) { return Matrix<T>(cauchy_row(f.B[j], mu, y)); };
    Matrix<T> Kt = Matrix<T>::Zero(f.p, f.p), K = Matrix<T>::Zero(f.p, f.p);
    for (Eigen::Index k = 0; k < n; ++k) {
      Kt += ft.A[k](x) * cauchy_row(ft.B[k], mut, y);
      K += f.A[k](x) * cauchy_row(f.B[k], mu, y);
    }
    Matrix<T> r2 = Kt * Ry - Rx * K + commutator(At, Dm, f.p, f.p) - (Rx - Ry) / (x - y);
    out.mixed_D = max_abs(r2);
  }
  if (n >= e.ML()) {
    auto Ct = [&](Eigen::Index i) { return Matrix<T>(cauchy_col(mut, ft.A[i], x)); };
    Matrix<T> Kt = Matrix<T>::Zero(f.q, f.q), K = Matrix<T>::Zero(f.q, f.q);
    for (Eigen::Index k = 0; k < n; ++k) {
      Kt += cauchy_col(mut, ft.A[k], x) * ft.B[k](y);
      K += cauchy_col(mu, f.A[k], x) * f.B[k](y);
    }
    Matrix<T> r3 = Lx * K - Kt * Ly - commutator(Ct, Bb, f.q, f.q) - (Lx - Ly) / (x - y);
    out.mixed_C = max_abs(r3);
  }
  return out;
}

// Existence diagnostics over indices 0..N-1.
template <class T>
struct ExistenceReport {
  std::vector<T> tau;
  std::vector<T> omega_minors;    // leading principal minors of the square truncation of Omega
  Eigen::Index lu_index = -1;     // first failing pivot of the perturbed LU (-1: none up to N)
  bool all_tau_nonzero = true;
  bool all_minors_nonzero = true;
  bool perturbed_lu_ok = true;
  bool necessity_holds = true;    // LU through k  =>  tau_n != 0 for n < k
  std::vector<Eigen::Index> necessity_violations;
};

template <class T>
ExistenceReport<T> existence_report(const StandardEngine<T>& e, const MatrixMeasure<T>& mut, Eigen::Index N) {
  ExistenceReport<T> r;
  N = std::min<Eigen::Index>(N, e.last_row() + 1);
  for (Eigen::Index n = 0; n < N; ++n) {
    r.tau.push_back(e.tau(n));
    if (is_zero(r.tau.back())) r.all_tau_nonzero = false;
  }
  try {
    lu_nopivot(build_moment_matrix(mut, N));
  } catch (const SingularLeadingMinor& s) {
    r.lu_index = s.index();
    r.perturbed_lu_ok = false;
  }
  const Eigen::Index ok_through = r.perturbed_lu_ok ? N : r.lu_index;
  for (Eigen::Index n = 0; n < ok_through; ++n)
    if (is_zero(r.tau[n])) {
      r.necessity_holds = false;
      r.necessity_violations.push_back(n);
    }
  if (r.all_tau_nonzero) {
    ConnectionMatrix<T> W = e.omega(N);
    const Matrix<T> D = W.dense(N, N);
    for (Eigen::Index k = 1; k <= N; ++k) {
      r.omega_minors.push_back(determinant(Matrix<T>(D.topLeftCorner(k, k))));
      if (is_zero(r.omega_minors.back())) r.all_minors_nonzero = false;
    }
  } else {
    r.all_minors_nonzero = false;
  }
  return r;
}

}  // namespace mopkit

#endif
