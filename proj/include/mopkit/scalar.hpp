#ifndef MOPKIT_SCALAR_HPP
#define MOPKIT_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include "mopkit/errors.hpp"

namespace mopkit {

namespace bmp = boost::multiprecision;

using Rational = bmp::number<bmp::gmp_rational, bmp::et_off>;
using BigFloat = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <class T>
using RowVector = Eigen::Matrix<T, 1, Eigen::Dynamic>;

// Working precision for BigFloat, in bits. Thread-local so tests can nest guards.
inline int& float_bits() {
  thread_local int bits = 256;
  return bits;
}

inline unsigned bits_to_digits10(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 1;
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits) : saved_bits_(float_bits()), saved_digits_(BigFloat::default_precision()) {
    float_bits() = bits;
    BigFloat::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionGuard() {
    float_bits() = saved_bits_;
    BigFloat::default_precision(saved_digits_);
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  int saved_bits_;
  unsigned saved_digits_;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static const char* backend() { return "rational"; }
  static Rational tol() { return Rational(0); }
  static bool negligible(const Rational& x, const Rational& /*scale*/ = Rational(1)) { return x == 0; }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

  static std::string to_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
  }

  // Accepts "a/b", integers and plain decimals ("0.125", "-3e-2"), all exactly.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      bmp::mpz_int num(s.substr(0, slash)), den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    std::string mant = s;
    long exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mant = s.substr(0, e);
      exp10 = std::stol(s.substr(e + 1));
    }
    auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw std::invalid_argument("bad number '" + s + "'");
    bool neg = false;
    if (mant[0] == '+' || mant[0] == '-') {
      neg = mant[0] == '-';
      mant.erase(0, 1);
    }
    // a leading zero would make GMP read the digits as octal
    mant.erase(0, std::min(mant.find_first_not_of('0'), mant.size() - 1));
    if (neg) mant.insert(0, "-");
    Rational r{bmp::mpz_int(mant)};
    bmp::mpz_int p = bmp::pow(bmp::mpz_int(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(r / Rational(p)) : Rational(r * Rational(p));
  }
};

template <>
struct ScalarTraits<BigFloat> {
  static constexpr bool exact = false;
  static const char* backend() { return "float"; }
  // 2^(-bits/2): half the working bits are trusted after cancellation.
  static BigFloat tol() { return bmp::ldexp(BigFloat(1), -float_bits() / 2); }
  static BigFloat abs(const BigFloat& x) { return bmp::abs(x); }
  static bool negligible(const BigFloat& x, const BigFloat& scale = BigFloat(1)) {
    BigFloat s = bmp::abs(scale);
    if (s < 1) s = 1;
    return bmp::abs(x) <= tol() * s;
  }

  static std::string to_string(const BigFloat& x) {
    std::ostringstream os;
    os << std::setprecision(static_cast<int>(bits_to_digits10(float_bits()))) << std::scientific << x;
    return os.str();
  }

  static BigFloat parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) return BigFloat(s.substr(0, slash)) / BigFloat(s.substr(slash + 1));
    return BigFloat(s);
  }
};

template <class T>
inline bool is_zero(const T& x) {
  return ScalarTraits<T>::negligible(x);
}

template <class T>
inline T abs_value(const T& x) {
  return ScalarTraits<T>::abs(x);
}

template <class T>
inline std::string to_string(const T& x) {
  return ScalarTraits<T>::to_string(x);
}

template <class T>
inline T parse_scalar(const std::string& s) {
  return ScalarTraits<T>::parse(s);
}

// Explicit backend conversion. Arithmetic never mixes backends implicitly.
template <class To, class From>
inline To convert(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, BigFloat> && std::is_same_v<From, Rational>) {
    return BigFloat(numerator(x).str()) / BigFloat(denominator(x).str());
  } else {
    static_assert(sizeof(To) == 0, "unsupported backend conversion");
  }
}

template <class To, class From>
inline Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = convert<To>(m(i, j));
  return out;
}

template <class T>
inline T max_abs(const Matrix<T>& m) {
  T best(0);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      T a = abs_value(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

}  // namespace mopkit

#endif
