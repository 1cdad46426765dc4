#ifndef MOPKIT_TEST_QUADRATURE_HPP
#define MOPKIT_TEST_QUADRATURE_HPP

// Independent oracle for Jacobi-type integrals: tanh-sinh on a cpp_bin_float type.
// The mpfr type trips the quadrature's integer truncation near the endpoints, so values
// cross over through decimal strings.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mopkit/poly.hpp"

namespace mopkit::testing {

using QuadFloat = bmp::number<bmp::cpp_bin_float<80>, bmp::et_off>;

inline QuadFloat to_quad(const BigFloat& x) { return QuadFloat(x.str(0, std::ios_base::scientific)); }
inline BigFloat from_quad(const QuadFloat& x) { return BigFloat(x.str(0, std::ios_base::scientific)); }

// int_0^1 p(x) x^A (1-x)^B dx, A, B > -1. Uses the complement argument so (1-x)^B stays accurate near 1.
inline BigFloat jacobi_quad(const Poly<BigFloat>& p, const BigFloat& A, const BigFloat& B) {
  std::vector<QuadFloat> c;
  for (int k = 0; k <= p.degree(); ++k) c.push_back(to_quad(p.coeff(k)));
  const QuadFloat a = to_quad(A), b = to_quad(B), half("0.5");
  auto f = [&](const QuadFloat& x, const QuadFloat& xc) {
    const QuadFloat om = x < half ? QuadFloat(1 - x) : xc;
    QuadFloat s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s * bmp::pow(x, a) * bmp::pow(om, b);
  };
  boost::math::quadrature::tanh_sinh<QuadFloat> ts;
  return from_quad(ts.integrate(f, QuadFloat(0), QuadFloat(1)));
}

}  // namespace mopkit::testing

#endif
