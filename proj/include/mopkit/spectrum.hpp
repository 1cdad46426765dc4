#ifndef MOPKIT_SPECTRUM_HPP
#define MOPKIT_SPECTRUM_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "mopkit/matrix_poly.hpp"

namespace mopkit {

template <class T>
struct Eigenvalue {
  T value;
  int multiplicity = 0;  // algebraic, as a root of det P
};

namespace detail {

// Approximate roots of p through the companion matrix in double precision.
template <class T>
std::vector<std::complex<double>> approx_roots(const Poly<T>& p) {
  const int n = p.degree();
  std::vector<std::complex<double>> out;
  if (n < 1) return out;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  const T lead = p.lead();
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -static_cast<double>(p.coeff(i) / lead);
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

inline bmp::mpz_int round_to_int(const Rational& x) {
  bmp::mpz_int n = numerator(x), d = denominator(x);
  bmp::mpz_int q = (2 * n + d) / (2 * d);
  if (2 * n + d < 0 && (2 * n + d) % (2 * d) != 0) q -= 1;
  return q;
}

}  // namespace detail

// Rational roots with multiplicity of a rational polynomial; NonRationalSpectrum when
// a factor without rational roots is left over.
inline std::vector<Eigenvalue<Rational>> rational_roots(const Poly<Rational>& p) {
  std::vector<Eigenvalue<Rational>> out;
  if (p.is_zero()) throw NonRationalSpectrum("zero polynomial has no finite spectrum");
  if (p.degree() == 0) return out;
  Poly<Rational> sf = exact_div(p, poly_gcd(p, p.derivative()));
  // Roots a/b of an integer primitive polynomial satisfy b | lead, so root*lead is an integer.
  bmp::mpz_int den_lcm = 1;
  for (const auto& c : sf.coeffs()) {
    bmp::mpz_int d = denominator(c);
    den_lcm = bmp::lcm(den_lcm, d);
  }
  Rational lead = sf.lead() * Rational(den_lcm);
  Poly<Rational> rest = p;
  for (const auto& z : detail::approx_roots(sf)) {
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) continue;
    Rational guess(static_cast<double>(z.real()));
    Rational cand = Rational(detail::round_to_int(guess * lead)) / lead;
    if (sf(cand) != 0) continue;
    bool seen = false;
    for (const auto& e : out) seen = seen || e.value == cand;
    if (seen) continue;
    int m = 0;
    Poly<Rational> lin = Poly<Rational>::linear_root(cand);
    while (true) {
      auto [q, r] = divmod(rest, lin);
      if (!r.is_zero()) break;
      rest = q;
      ++m;
    }
    out.push_back({cand, m});
  }
  if (rest.degree() > 0) throw NonRationalSpectrum("determinant has a factor of degree " +
                                                   std::to_string(rest.degree()) + " without rational roots");
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

// Real roots of a float polynomial: companion eigenvalues, clustered at tol, then each cluster
// of size m polished by Newton on the (m-1)-th derivative where the root is simple.
inline std::vector<Eigenvalue<BigFloat>> real_roots(const Poly<BigFloat>& p, double cluster_tol = 1e-4) {
  std::vector<Eigenvalue<BigFloat>> out;
  auto z = detail::approx_roots(p);
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cl{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (!used[j] && std::abs(z[j] - z[i]) < cluster_tol * (1.0 + std::abs(z[i]))) {
        cl.push_back(j);
        used[j] = true;
      }
    std::complex<double> mean(0);
    for (auto k : cl) mean += z[k];
    mean /= static_cast<double>(cl.size());
    if (std::abs(mean.imag()) > cluster_tol * (1.0 + std::abs(mean.real())))
      throw BackendUnsupported("non-real eigenvalue in the float spectrum");
    const int m = static_cast<int>(cl.size());
    Poly<BigFloat> f = p.derivative(m - 1), df = f.derivative();
    BigFloat x(mean.real());
    for (int it = 0; it < 200; ++it) {
      BigFloat d = df(x);
      if (d == 0) break;
      BigFloat step = f(x) / d;
      x -= step;
      if (bmp::abs(step) <= ScalarTraits<BigFloat>::tol() * ScalarTraits<BigFloat>::tol() * (1 + bmp::abs(x))) break;
    }
    out.push_back({x, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  return out;
}

template <class T>
std::vector<Eigenvalue<T>> mp_spectrum(const MatPoly<T>& P) {
  Poly<T> d = determinant(P);
  if (d.is_zero()) throw SingularSystem("matrix polynomial is not regular (det identically zero)");
  if constexpr (ScalarTraits<T>::exact) return rational_roots(d);
  else return real_roots(d);
}

// A Jordan chain v_0, ..., v_{len-1}: sum_{k<=i} P^{(k)}(rho)/k! v_{i-k} = 0.
template <class T>
using JordanChain = std::vector<Vector<T>>;

namespace detail {

template <class T>
Matrix<T> block_toeplitz(const std::vector<Matrix<T>>& Pk, int m) {
  const Eigen::Index s = Pk[0].rows();
  Matrix<T> Tm = Matrix<T>::Zero(m * s, m * s);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j)
      if (i - j < static_cast<int>(Pk.size())) Tm.block(i * s, j * s, s, s) = Pk[i - j];
  return Tm;
}

template <class T>
bool in_span(const std::vector<Vector<T>>& basis, const Vector<T>& v) {
  if (basis.empty()) return v.isZero();
  Matrix<T> A(v.size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) A.col(k) = basis[k];
  Matrix<T> Av(v.size(), A.cols() + 1);
  Av << A, v;
  return rank(Av) == rank(A);
}

}  // namespace detail

// Canonical right Jordan chains at rho from the rank profile of the block Toeplitz
// matrices. Chain lengths are the partial multiplicities; their sum must equal K.
// Leads are taken from reduced echelon bases and scaled so the first nonzero entry is 1.
template <class T>
std::vector<JordanChain<T>> jordan_chains(const MatPoly<T>& P, const T& rho, int K) {
  const Eigen::Index s = P.rows();
  if (K < 1) throw InconsistentMultiplicity("multiplicity must be positive");
  std::vector<Matrix<T>> Pk = P.taylor(rho, K + 1);
  std::vector<Eigen::Index> d{0};
  std::vector<Matrix<T>> kernels{Matrix<T>()};
  for (int m = 1; m <= K + 1; ++m) {
    Matrix<T> N = nullspace(detail::block_toeplitz(Pk, m));
    if (N.cols() == d.back()) break;
    d.push_back(N.cols());
    kernels.push_back(N);
  }
  const int longest = static_cast<int>(d.size()) - 1;
  if (longest == 0 || d.back() != K)
    throw InconsistentMultiplicity("kernel dimensions sum to " + std::to_string(d.back()) +
                                   " but the multiplicity is " + std::to_string(K));
  std::vector<JordanChain<T>> chains;
  std::vector<Vector<T>> leads;
  for (int m = longest; m >= 1; --m) {
    const Matrix<T>& N = kernels[m];
    Matrix<T> F = N.topRows(s);
    Echelon<T> e = rref(Matrix<T>(F.transpose()));
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      Vector<T> v = e.R.row(r).transpose();
      if (detail::in_span(leads, v)) continue;
      leads.push_back(v);
      Vector<T> c = solve_particular(F, v);
      Vector<T> full = N * c;
      T first(0);
      for (Eigen::Index i = 0; i < s; ++i)
        if (!is_zero(v(i))) {
          first = v(i);
          break;
        }
      JordanChain<T> ch;
      for (int b = 0; b < m; ++b) ch.push_back(full.segment(b * s, s) / first);
      chains.push_back(std::move(ch));
    }
  }
  return chains;
}

// Left chains are right chains of the transpose: sum_k w_{i-k} P^{(k)}(rho)/k! = 0.
template <class T>
std::vector<JordanChain<T>> left_jordan_chains(const MatPoly<T>& P, const T& rho, int K) {
  return jordan_chains(P.transpose(), rho, K);
}

template <class T>
std::vector<int> partial_multiplicities(const std::vector<JordanChain<T>>& chains) {
  std::vector<int> out;
  for (const auto& c : chains) out.push_back(static_cast<int>(c.size()));
  std::sort(out.begin(), out.end(), std::greater<int>());
  return out;
}

// Full spectral description of one side of a perturbation.
template <class T>
struct SpectralPoint {
  T value;
  int multiplicity = 0;
  std::vector<JordanChain<T>> right;  // columns
  std::vector<JordanChain<T>> left;   // rows, stored as column vectors
};

template <class T>
std::vector<SpectralPoint<T>> spectral_data(const MatPoly<T>& P) {
  std::vector<SpectralPoint<T>> out;
  for (const auto& e : mp_spectrum(P)) {
    SpectralPoint<T> sp{e.value, e.multiplicity, jordan_chains(P, e.value, e.multiplicity),
                        left_jordan_chains(P, e.value, e.multiplicity)};
    out.push_back(std::move(sp));
  }
  return out;
}

// Spectral data when the eigenvalues are known in advance (float backend, designed spectra).
template <class T>
std::vector<SpectralPoint<T>> spectral_data(const MatPoly<T>& P, const std::vector<Eigenvalue<T>>& eig) {
  std::vector<SpectralPoint<T>> out;
  for (const auto& e : eig)
    out.push_back({e.value, e.multiplicity, jordan_chains(P, e.value, e.multiplicity),
                   left_jordan_chains(P, e.value, e.multiplicity)});
  return out;
}

}  // namespace mopkit

#endif
