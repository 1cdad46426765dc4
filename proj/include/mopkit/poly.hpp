#ifndef MOPKIT_POLY_HPP
#define MOPKIT_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "mopkit/scalar.hpp"

namespace mopkit {

// Dense univariate polynomial, coefficients low to high, no trailing exact zeros.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<T> c) : c_(c) { trim(); }

  static Poly constant(const T& a) { return Poly(std::vector<T>{a}); }
  static Poly monomial(int k, const T& a = T(1)) {
    std::vector<T> c(k + 1, T(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  // x - a
  static Poly linear_root(const T& a) { return Poly(std::vector<T>{T(-a), T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : T(0); }
  T lead() const { return c_.empty() ? T(0) : c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Taylor coefficients of P(a + h), orders 0..order-1 (P^{(k)}(a)/k!).
  std::vector<T> taylor(const T& a, int order) const {
    std::vector<T> work = c_;
    std::vector<T> out(order, T(0));
    const int n = static_cast<int>(work.size());
    for (int k = 0; k < order && k < n; ++k) {
      T acc(0);
      for (int i = n - 1; i >= k; --i) {
        acc = acc * a + work[i];
        work[i] = acc;
      }
      out[k] = work[k];
    }
    return out;
  }

  Poly derivative(int k = 1) const {
    if (k == 0) return *this;
    if (degree() < k) return Poly();
    std::vector<T> d(c_.size() - k);
    for (std::size_t i = k; i < c_.size(); ++i) {
      T f(1);
      for (int j = 0; j < k; ++j) f *= T(static_cast<long>(i) - j);
      d[i - k] = c_[i] * f;
    }
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const T& a) {
    for (auto& v : c_) v *= a;
    trim();
    return *this;
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; the remainder has degree < deg(d).
  friend std::pair<Poly, Poly> divmod(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw SingularSystem("polynomial division by zero");
    if (n.degree() < d.degree()) return {Poly(), n};
    std::vector<T> r = n.c_;
    std::vector<T> q(n.c_.size() - d.c_.size() + 1, T(0));
    const int dd = d.degree();
    const T lead = d.lead();
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      T f = r[k + dd] / lead;
      q[k] = f;
      for (int j = 0; j <= dd; ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  // Scale so the leading coefficient is 1.
  Poly monic() const {
    if (is_zero()) return *this;
    return *this * T(T(1) / lead());
  }

  // Drop coefficients negligible against `scale` (float cleanup only).
  Poly chop(const T& scale) const {
    std::vector<T> c = c_;
    for (auto& v : c)
      if (ScalarTraits<T>::negligible(v, scale)) v = T(0);
    return Poly(std::move(c));
  }

  T max_abs_coeff() const {
    T m(0);
    for (const auto& v : c_)
      if (abs_value(v) > m) m = abs_value(v);
    return m;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

// Quotient of an exact division; throws NotDivisible on a nonzero remainder.
template <class T>
Poly<T> exact_div(const Poly<T>& n, const Poly<T>& d) {
  auto [q, r] = divmod(n, d);
  if constexpr (ScalarTraits<T>::exact) {
    if (!r.is_zero()) throw NotDivisible("nonzero remainder in exact polynomial division");
  } else {
    if (!r.chop(std::max(n.max_abs_coeff(), T(1))).is_zero())
      throw NotDivisible("remainder above tolerance in polynomial division");
  }
  return q;
}

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  static_assert(ScalarTraits<T>::exact, "polynomial gcd requires the exact backend");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class T>
Poly<T> pow(const Poly<T>& p, int k) {
  Poly<T> r = Poly<T>::constant(T(1));
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

// Power series quotient a/b truncated to `order` terms; requires b[0] != 0.
template <class T>
std::vector<T> series_divide(const std::vector<T>& a, const std::vector<T>& b, int order) {
  if (b.empty() || b[0] == 0) throw EvaluationAtPole("series division by a series vanishing at the origin");
  std::vector<T> q(order, T(0));
  for (int k = 0; k < order; ++k) {
    T acc = k < static_cast<int>(a.size()) ? a[k] : T(0);
    for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return q;
}

template <class T>
std::vector<T> series_multiply(const std::vector<T>& a, const std::vector<T>& b, int order) {
  std::vector<T> r(order, T(0));
  for (int i = 0; i < order && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j < order && j < static_cast<int>(b.size()); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace mopkit

#endif
