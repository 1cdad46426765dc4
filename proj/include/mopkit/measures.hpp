#ifndef MOPKIT_MEASURES_HPP
#define MOPKIT_MEASURES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mopkit/matrix_poly.hpp"
#include "mopkit/spectrum.hpp"

namespace mopkit {

// num(x) / prod (x - a_i)^{m_i}
template <class T>
struct RationalFn {
  Poly<T> num;
  std::vector<Eigenvalue<T>> poles;

  static RationalFn polynomial(Poly<T> p) { return {std::move(p), {}}; }

  bool is_pole(const T& x) const {
    for (const auto& e : poles)
      if (e.value == x) return true;
    return false;
  }

  Poly<T> denominator() const {
    Poly<T> d = Poly<T>::constant(T(1));
    for (const auto& e : poles) d = d * pow(Poly<T>::linear_root(e.value), e.multiplicity);
    return d;
  }

  T operator()(const T& x) const {
    T d(1);
    for (const auto& e : poles) {
      T f = x - e.value;
      if (f == 0) throw EvaluationAtPole("rational function evaluated at a pole");
      for (int k = 0; k < e.multiplicity; ++k) d *= f;
    }
    return num(x) / d;
  }

  // Taylor coefficients of f(x0 + h).
  std::vector<T> taylor(const T& x0, int order) const {
    if (is_pole(x0)) throw EvaluationAtPole("Taylor expansion at a pole");
    return series_divide(num.taylor(x0, order), denominator().taylor(x0, order), order);
  }

  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    RationalFn r{a.num * b.num, a.poles};
    for (const auto& e : b.poles) {
      bool merged = false;
      for (auto& f : r.poles)
        if (f.value == e.value) {
          f.multiplicity += e.multiplicity;
          merged = true;
        }
      if (!merged) r.poles.push_back(e);
    }
    return r;
  }
};

template <class T>
struct PartialFractions {
  Poly<T> poly;
  // terms[i][t-1] is the coefficient of (x - poles[i])^{-t}
  std::vector<Eigenvalue<T>> poles;
  std::vector<std::vector<T>> terms;
};

template <class T>
PartialFractions<T> partial_fractions(const RationalFn<T>& f) {
  PartialFractions<T> pf;
  pf.poly = divmod(f.num, f.denominator()).first;
  pf.poles = f.poles;
  for (std::size_t i = 0; i < f.poles.size(); ++i) {
    const auto& e = f.poles[i];
    Poly<T> other = Poly<T>::constant(T(1));
    for (std::size_t j = 0; j < f.poles.size(); ++j)
      if (j != i) other = other * pow(Poly<T>::linear_root(f.poles[j].value), f.poles[j].multiplicity);
    const int m = e.multiplicity;
    auto g = series_divide(f.num.taylor(e.value, m), other.taylor(e.value, m), m);
    std::vector<T> t(m);
    for (int k = 0; k < m; ++k) t[m - 1 - k] = g[k];
    pf.terms.push_back(std::move(t));
  }
  return pf;
}

template <class T>
struct DiscreteAtoms {
  std::vector<T> nodes;
  std::vector<T> weights;
};

// f -> coef * (-1)^derivative * f^{(derivative)}(point)
template <class T>
struct DeltaTerm {
  T point;
  int derivative = 0;
  T coef;
};

template <class T>
struct ClosedFormWeight {
  std::string name;
  T lo, hi;                                         // support
  T radius;                                         // sup |x| on the support
  std::function<T(int)> moment;                     // int x^k w
  std::function<T(const T&, int)> cauchy;           // int w / (z - x)^{order+1}; may be empty
  std::function<bool(const T&, int)> integrable;    // pole of given order at an endpoint allowed?
};

// num(x)/prod(x - a)^m times a closed-form weight.
template <class T>
struct RationalWeight {
  ClosedFormWeight<T> base;
  RationalFn<T> factor;
};

template <class T>
using MeasureComponent = std::variant<DiscreteAtoms<T>, DeltaTerm<T>, ClosedFormWeight<T>, RationalWeight<T>>;

template <class T>
struct MeasureEntry {
  std::vector<MeasureComponent<T>> parts;
  bool empty() const { return parts.empty(); }
};

namespace detail {

template <class T>
T weight_pole_integral(const ClosedFormWeight<T>& w, const T& a, int t) {
  // int w / (x - a)^t = (-1)^t int w / (a - x)^t
  const bool inside = a > w.lo && a < w.hi;
  const bool boundary = a == w.lo || a == w.hi;
  if (inside) throw IntegrabilityViolation("pole at interior support point of " + w.name);
  if (boundary && !(w.integrable && w.integrable(a, t)))
    throw IntegrabilityViolation("non-integrable pole of order " + std::to_string(t) + " at an endpoint of " + w.name);
  T val;
  if (w.cauchy) {
    val = w.cauchy(a, t - 1);
  } else if constexpr (!ScalarTraits<T>::exact) {
    // int w/(a-x)^t = sum_k C(k+t-1, t-1) m_k / a^{k+t}
    if (!(abs_value(a) > w.radius)) throw SeriesDivergent("Cauchy series needs |z| beyond the support radius");
    // terms decay like (radius/|a|)^k; stop once the geometric tail is below one ulp of the sum
    T sum(0), ainv = T(1) / a, pw = bmp::pow(ainv, t), coef(1);
    const T tail = abs_value(a) / (abs_value(a) - w.radius);
    const T eps = bmp::ldexp(T(1), -float_bits());
    for (int k = 0; k < 200000; ++k) {
      if (k > 0) coef = coef * T(k + t - 1) / T(k);
      T term = coef * w.moment(k) * pw;
      sum += term;
      pw *= ainv;
      if (k > t + 4 && abs_value(term) * tail * T(k + t) <= eps * abs_value(sum)) break;
    }
    val = sum;
  } else {
    throw OracleMissing("no exact Cauchy oracle for " + w.name);
  }
  return (t % 2 == 0) ? val : T(-val);
}

template <class T>
T integrate_closed(const ClosedFormWeight<T>& w, const RationalFn<T>& f) {
  auto pf = partial_fractions(f);
  T acc(0);
  for (int j = 0; j <= pf.poly.degree(); ++j)
    if (pf.poly.coeff(j) != 0) acc += pf.poly.coeff(j) * w.moment(j);
  T scale(0);
  for (const auto& t : pf.terms)
    for (const auto& c : t)
      if (abs_value(c) > scale) scale = abs_value(c);
  for (std::size_t i = 0; i < pf.poles.size(); ++i)
    for (std::size_t t = 0; t < pf.terms[i].size(); ++t) {
      const T& c = pf.terms[i][t];
      if (ScalarTraits<T>::negligible(c, scale)) continue;
      acc += c * weight_pole_integral(w, pf.poles[i].value, static_cast<int>(t) + 1);
    }
  return acc;
}

}  // namespace detail

template <class T>
T integrate(const MeasureComponent<T>& c, const RationalFn<T>& f) {
  return std::visit(
      [&](const auto& part) -> T {
        using P = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<P, DiscreteAtoms<T>>) {
          T acc(0);
          for (std::size_t k = 0; k < part.nodes.size(); ++k) {
            if (f.is_pole(part.nodes[k])) throw PoleOnSupport("pole at an atom of a discrete measure");
            acc += part.weights[k] * f(part.nodes[k]);
          }
          return acc;
        } else if constexpr (std::is_same_v<P, DeltaTerm<T>>) {
          if (f.is_pole(part.point)) throw PoleOnSupport("pole at the point of a delta term");
          auto t = f.taylor(part.point, part.derivative + 1);
          T v = t[part.derivative] * factorial<T>(part.derivative) * part.coef;
          return (part.derivative % 2 == 0) ? v : T(-v);
        } else if constexpr (std::is_same_v<P, ClosedFormWeight<T>>) {
          return detail::integrate_closed(part, f);
        } else {
          return detail::integrate_closed(part.base, f * part.factor);
        }
      },
      c);
}

template <class T>
T integrate(const MeasureEntry<T>& e, const RationalFn<T>& f) {
  T acc(0);
  for (const auto& c : e.parts) acc += integrate(c, f);
  return acc;
}

// q x p matrix of entries, row-major.
template <class T>
class MatrixMeasure {
 public:
  MatrixMeasure() = default;
  MatrixMeasure(Eigen::Index q, Eigen::Index p) : q_(q), p_(p), e_(q * p), cache_(q * p) {}

  Eigen::Index q() const { return q_; }
  Eigen::Index p() const { return p_; }
  MeasureEntry<T>& entry(Eigen::Index b, Eigen::Index a) {
    cache_[b * p_ + a].clear();
    return e_[b * p_ + a];
  }
  const MeasureEntry<T>& entry(Eigen::Index b, Eigen::Index a) const { return e_[b * p_ + a]; }

  // int x^k d mu_{b,a}
  const T& moment(Eigen::Index b, Eigen::Index a, int k) const {
    auto& c = cache_[b * p_ + a];
    while (static_cast<int>(c.size()) <= k) {
      const int j = static_cast<int>(c.size());
      c.push_back(integrate(e_[b * p_ + a], RationalFn<T>::polynomial(Poly<T>::monomial(j))));
    }
    return c[k];
  }

  MatrixMeasure transpose() const {
    MatrixMeasure t(p_, q_);
    for (Eigen::Index b = 0; b < q_; ++b)
      for (Eigen::Index a = 0; a < p_; ++a) t.e_[a * q_ + b] = e_[b * p_ + a];
    return t;
  }

 private:
  Eigen::Index q_ = 0, p_ = 0;
  std::vector<MeasureEntry<T>> e_;
  mutable std::vector<std::vector<T>> cache_;
};

template <class T>
T moment_of_entry(const MatrixMeasure<T>& mu, Eigen::Index b, Eigen::Index a, int k) {
  return mu.moment(b, a, k);
}

// A discrete matrix measure sum_k W_k delta(x - x_k), W_k of size q x p.
template <class T>
MatrixMeasure<T> discrete_measure(const std::vector<T>& nodes, const std::vector<Matrix<T>>& W) {
  const Eigen::Index q = W.at(0).rows(), p = W.at(0).cols();
  MatrixMeasure<T> mu(q, p);
  for (Eigen::Index b = 0; b < q; ++b)
    for (Eigen::Index a = 0; a < p; ++a) {
      DiscreteAtoms<T> atoms;
      for (std::size_t k = 0; k < nodes.size(); ++k)
        if (W[k](b, a) != 0) {
          atoms.nodes.push_back(nodes[k]);
          atoms.weights.push_back(W[k](b, a));
        }
      if (!atoms.nodes.empty()) mu.entry(b, a).parts.push_back(atoms);
    }
  return mu;
}

// sum_{b,a} int B^{(b)} A^{(a)} d mu_{b,a} for a 1 x q row B and a p x 1 column A.
template <class T>
T pair_integrate(const MatPoly<T>& B, const MatrixMeasure<T>& mu, const MatPoly<T>& A) {
  if (B.rows() != 1 || B.cols() != mu.q() || A.cols() != 1 || A.rows() != mu.p())
    throw DimensionMismatch("pair_integrate shapes");
  T acc(0);
  for (Eigen::Index b = 0; b < mu.q(); ++b) {
    Poly<T> pb = B.entry(0, b);
    if (pb.is_zero()) continue;
    for (Eigen::Index a = 0; a < mu.p(); ++a) {
      Poly<T> prod = pb * A.entry(a, 0);
      if (prod.is_zero() || mu.entry(b, a).empty()) continue;
      for (int k = 0; k <= prod.degree(); ++k)
        if (prod.coeff(k) != 0) acc += prod.coeff(k) * mu.moment(b, a, k);
    }
  }
  return acc;
}

// Row vector int B(x) f(x) d mu(x), entries a = 0..p-1.
template <class T>
RowVector<T> integrate_row(const MatPoly<T>& B, const MatrixMeasure<T>& mu, const RationalFn<T>& f) {
  RowVector<T> out = RowVector<T>::Zero(mu.p());
  for (Eigen::Index b = 0; b < mu.q(); ++b) {
    Poly<T> pb = B.entry(0, b);
    if (pb.is_zero()) continue;
    RationalFn<T> g{pb * f.num, f.poles};
    for (Eigen::Index a = 0; a < mu.p(); ++a)
      if (!mu.entry(b, a).empty()) out(a) += integrate(mu.entry(b, a), g);
  }
  return out;
}

// Column vector int d mu(x) A(x) f(x), entries b = 0..q-1.
template <class T>
Vector<T> integrate_col(const MatrixMeasure<T>& mu, const MatPoly<T>& A, const RationalFn<T>& f) {
  Vector<T> out = Vector<T>::Zero(mu.q());
  for (Eigen::Index a = 0; a < mu.p(); ++a) {
    Poly<T> pa = A.entry(a, 0);
    if (pa.is_zero()) continue;
    RationalFn<T> g{pa * f.num, f.poles};
    for (Eigen::Index b = 0; b < mu.q(); ++b)
      if (!mu.entry(b, a).empty()) out(b) += integrate(mu.entry(b, a), g);
  }
  return out;
}

// int P(x) f(x) d mu(x) for an m x q matrix polynomial P; result m x p.
template <class T>
Matrix<T> integrate_right(const MatPoly<T>& P, const MatrixMeasure<T>& mu, const RationalFn<T>& f) {
  if (P.cols() != mu.q()) throw DimensionMismatch("integrate_right shapes");
  Matrix<T> out = Matrix<T>::Zero(P.rows(), mu.p());
  for (Eigen::Index r = 0; r < P.rows(); ++r)
    for (Eigen::Index b = 0; b < mu.q(); ++b) {
      Poly<T> pb = P.entry(r, b);
      if (pb.is_zero()) continue;
      RationalFn<T> g{pb * f.num, f.poles};
      for (Eigen::Index a = 0; a < mu.p(); ++a)
        if (!mu.entry(b, a).empty()) out(r, a) += integrate(mu.entry(b, a), g);
    }
  return out;
}

// int d mu(x) P(x) f(x) for a p x m matrix polynomial P; result q x m.
template <class T>
Matrix<T> integrate_left(const MatrixMeasure<T>& mu, const MatPoly<T>& P, const RationalFn<T>& f) {
  if (P.rows() != mu.p()) throw DimensionMismatch("integrate_left shapes");
  Matrix<T> out = Matrix<T>::Zero(mu.q(), P.cols());
  for (Eigen::Index c = 0; c < P.cols(); ++c)
    for (Eigen::Index a = 0; a < mu.p(); ++a) {
      Poly<T> pa = P.entry(a, c);
      if (pa.is_zero()) continue;
      RationalFn<T> g{pa * f.num, f.poles};
      for (Eigen::Index b = 0; b < mu.q(); ++b)
        if (!mu.entry(b, a).empty()) out(b, c) += integrate(mu.entry(b, a), g);
    }
  return out;
}

// 1 / (z - x)^{order+1} as a rational function of x.
template <class T>
RationalFn<T> cauchy_kernel(const T& z, int order) {
  T sign = (order % 2 == 0) ? T(-1) : T(1);
  return {Poly<T>::constant(sign), {{z, order + 1}}};
}

// int B(x) d mu(x) / (z - x)^{order+1}: the row Cauchy pairing (order-th derivative / (-1)^order order!).
template <class T>
RowVector<T> cauchy_row(const MatPoly<T>& B, const MatrixMeasure<T>& mu, const T& z, int order = 0) {
  return integrate_row(B, mu, cauchy_kernel(z, order));
}

template <class T>
Vector<T> cauchy_col(const MatrixMeasure<T>& mu, const MatPoly<T>& A, const T& z, int order = 0) {
  return integrate_col(mu, A, cauchy_kernel(z, order));
}

// Taylor coefficients in h of int B(x) d mu(x) / (z + h - x), orders 0..order-1.
template <class T>
std::vector<RowVector<T>> cauchy_row_taylor(const MatPoly<T>& B, const MatrixMeasure<T>& mu, const T& z, int order) {
  std::vector<RowVector<T>> out;
  for (int k = 0; k < order; ++k) {
    RowVector<T> v = cauchy_row(B, mu, z, k);
    out.push_back(k % 2 == 0 ? v : RowVector<T>(-v));
  }
  return out;
}

template <class T>
std::vector<Vector<T>> cauchy_col_taylor(const MatrixMeasure<T>& mu, const MatPoly<T>& A, const T& z, int order) {
  std::vector<Vector<T>> out;
  for (int k = 0; k < order; ++k) {
    Vector<T> v = cauchy_col(mu, A, z, k);
    out.push_back(k % 2 == 0 ? v : Vector<T>(-v));
  }
  return out;
}

enum class Orientation { Standard, Dual };

// A mass attached to position `pos` of chain `chain` at spectral point `point`.
// Standard: xi is q x 1 and pairs with a left chain of R. Dual: xi is 1 x p and pairs
// with a right chain of L.
template <class T>
struct MassTerm {
  int point = 0;
  int chain = 0;
  int pos = 0;
  MatPoly<T> xi;
};

namespace detail {

// Multiply a component by the rational function g (f -> int f g dc).
template <class T>
std::vector<MeasureComponent<T>> scale_component(const MeasureComponent<T>& c, const RationalFn<T>& g) {
  std::vector<MeasureComponent<T>> out;
  std::visit(
      [&](const auto& part) {
        using P = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<P, DiscreteAtoms<T>>) {
          DiscreteAtoms<T> a;
          for (std::size_t k = 0; k < part.nodes.size(); ++k) {
            if (g.is_pole(part.nodes[k])) throw PoleOnSupport("perturbation pole at an atom");
            T w = part.weights[k] * g(part.nodes[k]);
            if (w != 0) {
              a.nodes.push_back(part.nodes[k]);
              a.weights.push_back(w);
            }
          }
          if (!a.nodes.empty()) out.push_back(a);
        } else if constexpr (std::is_same_v<P, DeltaTerm<T>>) {
          // c (-1)^l (f g)^{(l)} = sum_j c (-1)^l C(l,j) g^{(l-j)} f^{(j)}
          const int l = part.derivative;
          if (g.is_pole(part.point)) throw PoleOnSupport("perturbation pole at a delta term");
          auto gt = g.taylor(part.point, l + 1);
          for (int j = 0; j <= l; ++j) {
            T gd = gt[l - j] * factorial<T>(l - j);
            T coef = part.coef * binomial<T>(l, j) * gd;
            if ((l - j) % 2 != 0) coef = -coef;
            if (coef != 0) out.push_back(DeltaTerm<T>{part.point, j, coef});
          }
        } else if constexpr (std::is_same_v<P, ClosedFormWeight<T>>) {
          out.push_back(RationalWeight<T>{part, g});
        } else {
          out.push_back(RationalWeight<T>{part.base, part.factor * g});
        }
      },
      c);
  return out;
}

// Raises IntegrabilityViolation when a rational factor has a non-integrable pole.
template <class T>
void check_integrable(const MeasureEntry<T>& e) {
  for (const auto& c : e.parts)
    if (const auto* rw = std::get_if<RationalWeight<T>>(&c)) {
      auto pf = partial_fractions(rw->factor);
      T scale(0);
      for (const auto& t : pf.terms)
        for (const auto& v : t)
          if (abs_value(v) > scale) scale = abs_value(v);
      for (std::size_t i = 0; i < pf.poles.size(); ++i) {
        const T& a = pf.poles[i].value;
        for (std::size_t t = 0; t < pf.terms[i].size(); ++t) {
          if (ScalarTraits<T>::negligible(pf.terms[i][t], scale)) continue;
          const int ord = static_cast<int>(t) + 1;
          if (a > rw->base.lo && a < rw->base.hi)
            throw IntegrabilityViolation("pole inside the support of " + rw->base.name);
          if ((a == rw->base.lo || a == rw->base.hi) && !(rw->base.integrable && rw->base.integrable(a, ord)))
            throw IntegrabilityViolation("non-integrable endpoint pole of order " + std::to_string(ord));
        }
      }
    }
}

// Delta terms realizing f -> [h^k] f(x0+h) * tau(h)_row * w(h)_col over positions 0..k.
template <class T>
void add_chain_mass(MeasureEntry<T>& e, const T& x0, const std::vector<T>& tau, const std::vector<T>& w, int k) {
  // coefficient of f_j (Taylor) is sum_{l=j}^{k} tau_{l-j} w_{k-l}; f_j = f^{(j)}/j!
  for (int j = 0; j <= k; ++j) {
    T s(0);
    for (int l = j; l <= k; ++l) s += tau[l - j] * w[k - l];
    if (s == 0) continue;
    T coef = s / factorial<T>(j);
    if (j % 2 != 0) coef = -coef;
    e.parts.push_back(DeltaTerm<T>{x0, j, coef});
  }
}

}  // namespace detail

// Standard: d mu~ = L d mu R^{-1} + sum L xi (sum_l (-1)^l/l! rbar_{k-l} delta^{(l)}(x - rho)).
// Dual:     d mu~ = L^{-1} d mu R + sum (sum_l (-1)^l/l! u_{k-l} delta^{(l)}(x - lambda)) xi R.
template <class T>
MatrixMeasure<T> perturb_measure(const MatrixMeasure<T>& mu, const MatPoly<T>& L, const MatPoly<T>& R,
                                 const std::vector<MassTerm<T>>& masses, Orientation o,
                                 const std::vector<SpectralPoint<T>>& specR,
                                 const std::vector<SpectralPoint<T>>& specL) {
  const Eigen::Index q = mu.q(), p = mu.p();
  if (L.rows() != q || L.cols() != q || R.rows() != p || R.cols() != p)
    throw DimensionMismatch("perturbation sizes do not match the measure");
  const bool standard = o == Orientation::Standard;
  const MatPoly<T>& inv_side = standard ? R : L;
  const auto& inv_spec = standard ? specR : specL;
  const Poly<T> det = determinant(inv_side);
  const MatPoly<T> adj = adjugate(inv_side);
  std::vector<Eigenvalue<T>> poles;
  for (const auto& s : inv_spec) poles.push_back({s.value, s.multiplicity});
  int total = 0;
  for (const auto& e : poles) total += e.multiplicity;
  if (total != det.degree()) throw MissingSpectralData("spectral data does not account for every root of det");
  const T inv_lead = T(1) / det.lead();

  MatrixMeasure<T> out(q, p);
  for (Eigen::Index bt = 0; bt < q; ++bt)
    for (Eigen::Index at = 0; at < p; ++at) {
      MeasureEntry<T>& dst = out.entry(bt, at);
      for (Eigen::Index b = 0; b < q; ++b)
        for (Eigen::Index a = 0; a < p; ++a) {
          const auto& src = mu.entry(b, a);
          if (src.empty()) continue;
          Poly<T> num = standard ? L.entry(bt, b) * adj.entry(a, at) : adj.entry(bt, b) * R.entry(a, at);
          if (num.is_zero()) continue;
          RationalFn<T> g{num * inv_lead, det.degree() > 0 ? poles : std::vector<Eigenvalue<T>>{}};
          for (const auto& c : src.parts)
            for (auto& piece : detail::scale_component(c, g)) dst.parts.push_back(std::move(piece));
        }
      detail::check_integrable(dst);
    }

  for (const auto& m : masses) {
    const auto& spec = standard ? specR : specL;
    if (m.point < 0 || m.point >= static_cast<int>(spec.size())) throw MissingSpectralData("mass refers to an unknown point");
    const auto& sp = spec[m.point];
    const auto& chains = standard ? sp.left : sp.right;
    if (m.chain < 0 || m.chain >= static_cast<int>(chains.size()) || m.pos < 0 ||
        m.pos >= static_cast<int>(chains[m.chain].size()))
      throw MissingSpectralData("mass refers to an unknown chain position");
    const auto& ch = chains[m.chain];
    const int k = m.pos;
    // tau: Taylor data of L xi (q x 1) or xi R (1 x p).
    MatPoly<T> lx = standard ? MatPoly<T>(L * m.xi) : MatPoly<T>(m.xi * R);
    auto tay = lx.taylor(sp.value, k + 1);
    for (Eigen::Index bt = 0; bt < q; ++bt)
      for (Eigen::Index at = 0; at < p; ++at) {
        std::vector<T> tau(k + 1), w(k + 1);
        for (int i = 0; i <= k; ++i) {
          tau[i] = standard ? tay[i](bt, 0) : tay[i](0, at);
          w[i] = standard ? ch[i](at) : ch[i](bt);
        }
        detail::add_chain_mass(out.entry(bt, at), sp.value, tau, w, k);
      }
  }
  return out;
}

template <class T>
ClosedFormWeight<T> lebesgue01() {
  ClosedFormWeight<T> w;
  w.name = "lebesgue[0,1]";
  w.lo = T(0);
  w.hi = T(1);
  w.radius = T(1);
  w.moment = [](int k) { return T(1) / T(k + 1); };
  if constexpr (!ScalarTraits<T>::exact) {
    w.cauchy = [](const T& z, int order) -> T {
      if (z >= 0 && z <= 1) throw PoleOnSupport("Cauchy transform on the support");
      if (order == 0) return bmp::log(bmp::abs(z / (z - 1)));
      return (bmp::pow(z - 1, -order) - bmp::pow(z, -order)) / T(order);
    };
  } else {
    w.cauchy = [](const T& z, int order) -> T {
      if (z >= 0 && z <= 1) throw PoleOnSupport("Cauchy transform on the support");
      if (order == 0) throw OracleMissing("logarithmic Cauchy transform is not rational");
      T a = T(1) / (z - 1), b = T(1) / z, pa(1), pb(1);
      for (int i = 0; i < order; ++i) {
        pa *= a;
        pb *= b;
      }
      return (pa - pb) / T(order);
    };
  }
  return w;
}

}  // namespace mopkit

#endif
