#ifndef MOPKIT_TEST_RANDOM_CASES_HPP
#define MOPKIT_TEST_RANDOM_CASES_HPP

// Seeded generators for discrete matrix measures and perturbations with designed rational spectra.
// Atoms sit on half-integers; every eigenvalue and probe is a/7 or a/11 with a coprime to the
// denominator, so none of them can land on an atom.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mopkit/uvarov.hpp"

namespace mopkit::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Rational off_grid(Rng& g, long den, long span) {
  long a = 0;
  while (a % den == 0) a = uniform(g, -span, span);
  return Rational(a, den);
}

struct RandomCase {
  std::string label;
  MatrixMeasure<Rational> mu;
  PerturbationBundle<Rational> b;
  Eigen::Index N = 0;
  std::vector<Rational> nodes;
};

inline MatrixMeasure<Rational> random_discrete(Rng& g, int q, int p, int atoms, std::vector<Rational>& nodes) {
  std::vector<long> grid;
  for (long k = -8; k <= 8; ++k) grid.push_back(k);
  std::shuffle(grid.begin(), grid.end(), g);
  nodes.clear();
  std::vector<Matrix<Rational>> w;
  for (int k = 0; k < atoms; ++k) {
    nodes.push_back(Rational(grid[k], 2));
    Matrix<Rational> m(q, p);
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < p; ++j) m(i, j) = Rational(uniform(g, -3, 4));
    // keep every weight of full rank so the moment matrix has rank atoms * min(q, p)
    for (int i = 0; i < std::min(q, p); ++i) m(i, i) += Rational(7);
    w.push_back(m);
  }
  return discrete_measure(nodes, w);
}

enum class Shape { Identity, Scalar, Triangular, Shifted };

struct SideSpec {
  Shape shape = Shape::Identity;
  int M = 0;  // degree of the determinant
};

inline bool rational_simple_spectrum(const MatPoly<Rational>& P, int M, const std::vector<Rational>& avoid) {
  const Poly<Rational> d = determinant(P);
  if (d.degree() != M) return false;
  if (M == 0) return true;
  try {
    auto r = rational_roots(d);
    int tot = 0;
    for (const auto& e : r) {
      if (e.multiplicity != 1) return false;
      if (std::find(avoid.begin(), avoid.end(), e.value) != avoid.end()) return false;
      if (denominator(e.value) == 2 || denominator(e.value) == 1) return false;
      tot += e.multiplicity;
    }
    return tot == M;
  } catch (const NonRationalSpectrum&) {
    return false;
  }
}

// Polynomial of size s with det of degree spec.M. Left = true builds the L shape (outer band above the diagonal).
inline MatPoly<Rational> random_side(Rng& g, int s, SideSpec spec, bool left, const std::vector<Rational>& avoid) {
  const Matrix<Rational> I = Matrix<Rational>::Identity(s, s);
  if (spec.shape == Shape::Identity) return MatPoly<Rational>::identity(s);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    MatPoly<Rational> P;
    if (spec.shape == Shape::Scalar) {
      Poly<Rational> f({Rational(1)});
      for (int k = 0; k < spec.M; ++k) f = f * Poly<Rational>::linear_root(off_grid(g, 7, 30));
      std::vector<Matrix<Rational>> c;
      for (int k = 0; k <= f.degree(); ++k) c.push_back(I * f.coeff(k));
      P = MatPoly<Rational>(s, s, c);
    } else if (spec.shape == Shape::Triangular) {
      Matrix<Rational> T = Matrix<Rational>::Zero(s, s);
      for (int i = 0; i < s; ++i) {
        T(i, i) = off_grid(g, 7, 30);
        for (int j = i + 1; j < s; ++j) T(i, j) = Rational(uniform(g, -2, 2));
      }
      P = MatPoly<Rational>(s, s, {Matrix<Rational>(-T), I});
    } else {
      const int d = s - spec.M;
      Matrix<Rational> top = Matrix<Rational>::Zero(s, s), c0(s, s);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) c0(i, j) = Rational(uniform(g, -3, 3), uniform(g, 1, 3));
      if (left) {
        top.block(d, 0, s - d, s - d).setIdentity();
        c0.block(0, s - d, d, d).setIdentity();
      } else {
        top.block(0, d, s - d, s - d).setIdentity();
        c0.block(s - d, 0, d, d).setIdentity();
      }
      P = MatPoly<Rational>(s, s, {c0, top});
    }
    if (rational_simple_spectrum(P, spec.M, avoid)) return P;
  }
  throw std::runtime_error("random_side: no admissible polynomial found");
}

inline std::vector<SideSpec> side_options(int s) {
  std::vector<SideSpec> o{{Shape::Identity, 0}, {Shape::Triangular, s}};
  if (s == 1) o.push_back({Shape::Scalar, 2});
  for (int M = 1; M < s; ++M) o.push_back({Shape::Shifted, M});
  return o;
}

inline std::vector<Rational> roots_of(const MatPoly<Rational>& P) {
  std::vector<Rational> out;
  if (determinant(P).degree() > 0)
    for (const auto& e : rational_roots(determinant(P))) out.push_back(e.value);
  return out;
}

// One case for the exact Christoffel suite: q, p <= 3, <= 12 atoms, M_L + M_R <= 4, masses on half of the chains.
inline RandomCase random_case(Rng& g, int index) {
  RandomCase rc;
  const int q = static_cast<int>(uniform(g, 1, 3)), p = static_cast<int>(uniform(g, 1, 3));
  const int atoms = static_cast<int>(uniform(g, 9, 12));
  rc.mu = random_discrete(g, q, p, atoms, rc.nodes);
  const Orientation o = uniform(g, 0, 3) == 0 ? Orientation::Dual : Orientation::Standard;
  auto lo = side_options(q), ro = side_options(p);
  SideSpec ls, rs;
  do {
    ls = lo[uniform(g, 0, static_cast<long>(lo.size()) - 1)];
    rs = ro[uniform(g, 0, static_cast<long>(ro.size()) - 1)];
  } while (ls.M + rs.M > 4 || ls.M + rs.M == 0);
  MatPoly<Rational> L = random_side(g, q, ls, true, rc.nodes);
  std::vector<Rational> avoid = rc.nodes;
  for (const auto& r : roots_of(L)) avoid.push_back(r);
  MatPoly<Rational> R = random_side(g, p, rs, false, avoid);
  // masses sit at the eigenvalues of the divided side: R (standard) or L (dual)
  const int M_div = o == Orientation::Standard ? rs.M : ls.M;
  std::vector<MassTerm<Rational>> masses;
  if (M_div > 0) {
    auto spec = spectral_data(o == Orientation::Standard ? R : L);
    for (int i = 0; i < static_cast<int>(spec.size()); ++i)
      for (int j = 0; j < static_cast<int>(spec[i].right.size()); ++j) {
        if (uniform(g, 0, 1) == 0) continue;
        const Eigen::Index rows = o == Orientation::Standard ? q : 1, cols = o == Orientation::Standard ? 1 : p;
        std::vector<Matrix<Rational>> c;
        for (int k = 0; k <= uniform(g, 0, 1); ++k) {
          Matrix<Rational> m(rows, cols);
          for (Eigen::Index a = 0; a < rows; ++a)
            for (Eigen::Index bb = 0; bb < cols; ++bb) m(a, bb) = Rational(uniform(g, -4, 4), uniform(g, 1, 3));
          c.push_back(m);
        }
        MatPoly<Rational> xi(rows, cols, c);
        if (!xi.is_zero()) masses.push_back({i, j, 0, xi});
      }
  }
  rc.b = make_bundle(L, R, o, masses);
  rc.N = std::min<Eigen::Index>(14, static_cast<Eigen::Index>(atoms) * std::min(q, p));
  rc.label = "case " + std::to_string(index) + ": q=" + std::to_string(q) + " p=" + std::to_string(p) +
             (o == Orientation::Standard ? " standard" : " dual") + " ML=" + std::to_string(rc.b.ML) +
             " MR=" + std::to_string(rc.b.MR) + " masses=" + std::to_string(masses.size());
  return rc;
}

// Probe points a/11 away from atoms and the given spectra.
inline std::vector<Rational> random_probes(Rng& g, int count, const std::vector<Rational>& avoid) {
  std::vector<Rational> z;
  while (static_cast<int>(z.size()) < count) {
    Rational x = off_grid(g, 11, 90);
    if (std::find(avoid.begin(), avoid.end(), x) == avoid.end() && std::find(z.begin(), z.end(), x) == z.end())
      z.push_back(x);
  }
  return z;
}

}  // namespace mopkit::testing

#endif
