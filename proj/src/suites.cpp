#include <algorithm>

#include "mopkit/app.hpp"
#include "mopkit/stieltjes.hpp"

namespace mopkit::app {

namespace {

using B = BigFloat;

template <class To, class From>
MatPoly<To> convert_poly(const MatPoly<From>& P) {
  std::vector<Matrix<To>> c;
  for (const auto& m : P.coeffs()) c.push_back(convert<To>(m));
  return MatPoly<To>(P.rows(), P.cols(), std::move(c));
}

template <class T>
std::vector<SpectralPoint<B>> spec_to_float(const std::vector<SpectralPoint<T>>& in) {
  auto chains = [](const std::vector<JordanChain<T>>& cs) {
    std::vector<JordanChain<B>> out;
    for (const auto& ch : cs) {
      JordanChain<B> c;
      for (const auto& v : ch) c.push_back(convert<B>(Matrix<T>(v)));
      out.push_back(std::move(c));
    }
    return out;
  };
  std::vector<SpectralPoint<B>> out;
  for (const auto& s : in) out.push_back({convert<B>(s.value), s.multiplicity, chains(s.right), chains(s.left)});
  return out;
}

JPParams<B> jp_params(const MeasureSpec& m) {
  return {{convert<B>(m.jp.alpha[0]), convert<B>(m.jp.alpha[1]), convert<B>(m.jp.alpha[2])}, convert<B>(m.jp.beta)};
}

template <class T>
T rel_gap(const MatPoly<T>& got, const MatPoly<T>& want) {
  const MatPoly<T> d = got - want;
  if (d.is_zero()) return T(0);
  T scale = want.is_zero() ? T(1) : want.max_abs_coeff();
  if (!got.is_zero() && got.max_abs_coeff() > scale) scale = got.max_abs_coeff();
  if (ScalarTraits<T>::exact) return d.max_abs_coeff();
  return T(d.max_abs_coeff() / scale);
}

// Exact backends assert zero; the float backend allows 2^(-bits/2) relative to the scale.
template <class T>
bool vanishes(const T& x) {
  return ScalarTraits<T>::negligible(x);
}

template <class T>
json scalars_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

template <class T>
json row_json(const RowVector<T>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

template <class T>
class Runner {
 public:
  Runner(const ExperimentConfig& cfg, MatrixMeasure<T> mu, PerturbationBundle<T> b, std::vector<T> probes,
         Family<T> fam)
      : cfg_(cfg), mu_(std::move(mu)), b_(std::move(b)), probes_(std::move(probes)), fam_(std::move(fam)) {
    mut_ = perturbed_measure(b_, mu_);
    if (b_.orientation == Orientation::Standard) {
      se_.emplace(mu_, fam_, b_);
      mu_s_ = mu_;
      mut_s_ = mut_;
    } else {
      de_.emplace(mu_, fam_, b_);
      mu_s_ = mu_.transpose();
      mut_s_ = mut_.transpose();
    }
  }

  json suite(const std::string& name, bool& pass, std::map<std::string, std::string>& tables) {
    if (name == "factor") return factor(pass, tables);
    if (name == "perturb") return perturb(pass);
    if (name == "residuals") return residuals(pass, tables);
    if (name == "tau") return tau(pass, tables);
    if (name == "stieltjes") return stieltjes(pass);
    if (name == "existence") return existence(pass);
    throw ConfigInvalid("suites", "suite '" + name + "' is not handled by this runner");
  }

 private:
  const StandardEngine<T>& standard() const { return se_ ? *se_ : de_->transposed(); }

  const Family<T>& oracle_standard() {
    if (!ft_s_) ft_s_ = oracle_direct(mut_s_, cfg_.N, Normalization::BMonic);
    return *ft_s_;
  }

  json factor(bool& pass, std::map<std::string, std::string>& tables) {
    json r;
    const T res = pairing_check(fam_, mu_);
    r["pairing_residual"] = to_string(res);
    std::vector<T> h(fam_.H.data(), fam_.H.data() + fam_.H.size());
    r["H"] = scalars_json(h);
    json bs = json::array(), as = json::array();
    for (Eigen::Index n = 0; n < fam_.size(); ++n) {
      bs.push_back(matpoly_json(fam_.B[n]));
      as.push_back(matpoly_json(fam_.A[n]));
    }
    r["typeII"] = bs;
    r["typeI"] = as;
    tables["moments.csv"] = matrix_csv(build_moment_matrix(mu_, cfg_.N));
    pass = vanishes(res);
    return r;
  }

  json perturb(bool& pass) {
    json r, bs = json::array(), as = json::array();
    T worst(0);
    std::vector<Eigen::Index> outside;
    const bool standard_o = b_.orientation == Orientation::Standard;
    const Normalization norm = standard_o ? Normalization::BMonic : Normalization::AMonic;
    const Family<T> ft = oracle_direct(mut_, cfg_.N, norm);
    const Eigen::Index top = std::min<Eigen::Index>(standard().last_row(), ft.size() - 1);
    for (Eigen::Index n = 0; n <= top; ++n) {
      MatPoly<T> primary = standard_o ? se_->typeII(n) : de_->typeI(n);
      const MatPoly<T>& want = standard_o ? ft.B[n] : ft.A[n];
      worst = std::max(worst, rel_gap(primary, want));
      (standard_o ? bs : as).push_back(matpoly_json(primary));
      try {
        MatPoly<T> secondary = standard_o ? se_->typeI(n) : de_->typeII(n);
        worst = std::max(worst, rel_gap(secondary, standard_o ? ft.A[n] : ft.B[n]));
        (standard_o ? as : bs).push_back(matpoly_json(secondary));
      } catch (const WindowError&) {
        outside.push_back(n);
        (standard_o ? as : bs).push_back(nullptr);
      }
    }
    r["normalization"] = standard_o ? "B-monic" : "A-monic";
    r["typeII"] = bs;
    r["typeI"] = as;
    r["outside_window"] = outside;
    r["max_difference_vs_oracle"] = to_string(worst);
    pass = vanishes(worst);
    return r;
  }

  json residuals(bool& pass, std::map<std::string, std::string>& tables) {
    json r;
    const auto& e = standard();
    ResidualReport<T> rep;
    try {
      rep = connection_residuals(e, mut_s_, oracle_standard(), probes_);
      r["cauchy"] = probes_.empty() ? "no probes configured" : "checked";
    } catch (const OracleMissing& ex) {
      rep = connection_residuals(e, mut_s_, oracle_standard(), std::vector<T>{});
      r["cauchy"] = std::string("unavailable: ") + ex.what();
    }
    r["omegaB_minus_BL"] = to_string(rep.omegaB_minus_BL);
    r["AOmega_minus_RA"] = to_string(rep.AOmega_minus_RA);
    r["moments"] = to_string(rep.moments);
    r["cauchy_C"] = to_string(rep.cauchy_C);
    r["cauchy_D"] = to_string(rep.cauchy_D);
    r["rows_checked"] = rep.rows_checked;
    r["cols_checked"] = rep.cols_checked;
    r["frame"] = b_.orientation == Orientation::Standard ? "standard" : "transposed standard";
    const Eigen::Index n = e.last_row() + 1;
    tables["omega.csv"] = matrix_csv(e.omega(n).dense(n, n + e.ML()));
    pass = vanishes(rep.max());
    return r;
  }

  // Reported, not asserted: zero is a legal value.
  json tau(bool& pass, std::map<std::string, std::string>& tables) {
    json r;
    const auto& e = standard();
    std::vector<T> t;
    json ledger = json::array();
    std::string csv = "n,tau\n";
    for (Eigen::Index n = 0; n <= e.last_row(); ++n) {
      t.push_back(e.tau(n));
      csv += std::to_string(n) + "," + to_string(t.back()) + "\n";
    }
    for (Eigen::Index k = 0; k < fam_.size(); ++k) ledger.push_back(row_json(e.ledger_row(k)));
    r["tau"] = scalars_json(t);
    r["ledger"] = ledger;
    r["frame"] = b_.orientation == Orientation::Standard ? "standard" : "transposed standard";
    tables["tau.csv"] = csv;
    pass = true;
    return r;
  }

  json stieltjes(bool& pass) {
    json r;
    const auto rep = stieltjes_transform_check(b_, mu_, mut_, probes_);
    r["S"] = matpoly_json(rep.S);
    r["S_tilde"] = matpoly_json(rep.St);
    r["degree_bound_S"] = rep.degree_bound_S;
    r["degree_bound_S_tilde"] = rep.degree_bound_St;
    r["degrees_ok"] = rep.degrees_ok;
    r["probes"] = scalars_json(rep.probes);
    r["identity_residual"] = scalars_json(rep.identity_residual);
    r["correction_mismatch"] = scalars_json(rep.correction_mismatch);
    pass = rep.degrees_ok && vanishes(rep.max());
    return r;
  }

  json existence(bool& pass) {
    json r;
    const auto rep = existence_report(standard(), mut_s_, cfg_.N);
    r["tau"] = scalars_json(rep.tau);
    r["omega_minors"] = scalars_json(rep.omega_minors);
    r["lu_index"] = rep.lu_index;
    r["all_tau_nonzero"] = rep.all_tau_nonzero;
    r["all_minors_nonzero"] = rep.all_minors_nonzero;
    r["perturbed_lu_ok"] = rep.perturbed_lu_ok;
    r["necessity_holds"] = rep.necessity_holds;
    r["necessity_violations"] = rep.necessity_violations;
    pass = rep.necessity_holds;
    return r;
  }

  const ExperimentConfig& cfg_;
  MatrixMeasure<T> mu_, mut_, mu_s_, mut_s_;
  PerturbationBundle<T> b_;
  std::vector<T> probes_;
  Family<T> fam_;
  std::optional<StandardEngine<T>> se_;
  std::optional<DualEngine<T>> de_;
  std::optional<Family<T>> ft_s_;
};

// Engine, oracle and the explicit determinant displays for the two case-study perturbations.
json jp_case_study(const ExperimentConfig& cfg, bool& pass) {
  const auto& s = cfg.perturbation;
  const JPParams<B> p = jp_params(cfg.measure);
  const B c = convert<B>(s.c), d = convert<B>(s.d);
  const MatPoly<B> xi = convert_poly<B>(s.jp_xi);
  const auto mu = jp_measure(p);
  const auto fam = jp_family(p, static_cast<int>(cfg.N));
  const auto b = jp_bundle(*s.jp, c, d, xi);
  const Eigen::Index M = std::max<Eigen::Index>(1, cfg.N - 2);
  const auto ft = oracle_direct(perturbed_measure(b, mu), M, Normalization::BMonic);
  const JPLedger<B> L{&mu, &fam, c, d, xi};
  const bool first = *s.jp == JPPerturbation::First;
  const bool shifted = first && s.c == 1 && s.d == 0 && s.jp_xi.is_zero();

  std::optional<DualEngine<B>> de;
  std::optional<StandardEngine<B>> se;
  if (first) de.emplace(mu, fam, b, Normalization::BMonic);
  else se.emplace(mu, fam, b);
  const Eigen::Index last = first ? de->last_row() : se->last_row();
  // displays read ledger rows up to n + 3
  const Eigen::Index top = std::min({last, M - 1, cfg.N - 4});

  std::map<std::string, B> worst;
  json rows = json::array();
  auto note = [&](json& row, const std::string& key, const B& v) {
    row[key] = to_string(v);
    if (!worst.count(key) || v > worst[key]) worst[key] = v;
  };
  for (Eigen::Index n = 0; n <= top; ++n) {
    json row;
    row["n"] = n;
    const int ni = static_cast<int>(n);
    if (first) {
      note(row, "engine_typeI_vs_oracle", rel_gap(de->typeI(n), ft.A[n]));
      try {
        note(row, "engine_typeII_vs_oracle", rel_gap(de->typeII(n), ft.B[n]));
      } catch (const WindowError&) {
      }
      if (shifted)
        note(row, "oracle_typeII_vs_shifted_closed_form", rel_gap(ft.B[n], detail::as_matpoly(jp_typeII(jp_first_shift(p), ni))));
      if (n >= 1) {
        note(row, "display_typeII_vs_oracle", rel_gap(detail::as_matpoly(jp_first_typeII_display(L, ni - 1)), ft.B[n]));
        note(row, "display_typeI_vs_minus_oracle", rel_gap(jp_first_typeI_display(L, ni), MatPoly<B>(ft.A[n] * B(-1))));
      }
    } else {
      note(row, "engine_typeII_vs_oracle", rel_gap(se->typeII(n), ft.B[n]));
      try {
        note(row, "engine_typeI_vs_oracle", rel_gap(se->typeI(n), ft.A[n]));
      } catch (const WindowError&) {
      }
      if (n >= 2) note(row, "display_typeII_vs_oracle", rel_gap(detail::as_matpoly(jp_second_typeII_display(L, ni)), ft.B[n]));
      if (n >= 3) note(row, "display_typeI_vs_oracle_shifted", rel_gap(jp_second_typeI_display(L, ni), ft.A[n - 1]));
    }
    rows.push_back(row);
  }
  json r;
  r["perturbation"] = first ? "first" : "second";
  r["rows"] = rows;
  r["tolerance"] = to_string(ScalarTraits<B>::tol());
  json mx = json::object();
  pass = !rows.empty();
  for (const auto& [k, v] : worst) {
    mx[k] = to_string(v);
    pass = pass && vanishes(v);
  }
  r["max_relative_error"] = mx;
  return r;
}

template <class T>
RunResult run_with(const ExperimentConfig& cfg, MatrixMeasure<T> mu, PerturbationBundle<T> b, Family<T> fam) {
  RunResult out;
  std::vector<T> probes;
  for (const auto& z : cfg.probes) probes.push_back(convert<T>(z));
  std::optional<Runner<T>> runner;
  std::string setup_error;
  try {
    runner.emplace(cfg, std::move(mu), std::move(b), std::move(probes), std::move(fam));
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  json suites = json::object();
  for (const auto& name : cfg.suites) {
    bool pass = false;
    json r;
    try {
      if (name == "jp-case-study") {
        if constexpr (std::is_same_v<T, B>) r = jp_case_study(cfg, pass);
        else throw BackendUnsupported("jp-case-study needs the float backend");
      } else if (!runner) {
        throw Error("SetupFailed", setup_error);
      } else {
        r = runner->suite(name, pass, out.tables);
      }
      r["status"] = pass ? "pass" : "fail";
    } catch (const Error& e) {
      r = {{"status", "error"}, {"error", e.kind()}, {"message", e.what()}};
    } catch (const std::exception& e) {
      r = {{"status", "error"}, {"error", "Error"}, {"message", e.what()}};
    }
    out.pass = out.pass && pass;
    suites[name] = r;
  }
  out.report["suites"] = suites;
  return out;
}

}  // namespace

MatrixMeasure<Rational> exact_measure(const MeasureSpec& m) {
  if (m.kind == MeasureSpec::Kind::Discrete) return discrete_measure(m.nodes, m.weights);
  if (m.kind == MeasureSpec::Kind::JacobiPineiro) throw BackendUnsupported("jacobi-pineiro moments are not rational");
  MatrixMeasure<Rational> mu(m.q, m.p);
  for (Eigen::Index i = 0; i < m.q; ++i) mu.entry(i, i).parts.push_back(lebesgue01<Rational>());
  return mu;
}

MatrixMeasure<B> to_float_measure(const MeasureSpec& m) {
  if (m.kind == MeasureSpec::Kind::JacobiPineiro) return jp_measure(jp_params(m));
  if (m.kind == MeasureSpec::Kind::Discrete) {
    std::vector<B> nodes;
    std::vector<Matrix<B>> w;
    for (const auto& x : m.nodes) nodes.push_back(convert<B>(x));
    for (const auto& x : m.weights) w.push_back(convert<B>(x));
    return discrete_measure(nodes, w);
  }
  MatrixMeasure<B> mu(m.q, m.p);
  for (Eigen::Index i = 0; i < m.q; ++i) mu.entry(i, i).parts.push_back(lebesgue01<B>());
  return mu;
}

PerturbationBundle<Rational> exact_bundle(const PerturbationSpec& s) {
  if (s.jp) throw BackendUnsupported("case-study perturbations are built on the float backend");
  const bool standard = s.orientation == Orientation::Standard;
  const MatPoly<Rational>& divided = standard ? s.R : s.L;
  std::vector<SpectralPoint<Rational>> spec;
  if (!s.masses.empty() && determinant(divided).degree() > 0) spec = spectral_data(divided);
  std::vector<MassTerm<Rational>> masses;
  for (std::size_t k = 0; k < s.masses.size(); ++k) {
    const auto& m = s.masses[k];
    auto it = std::find_if(spec.begin(), spec.end(), [&](const auto& p) { return p.value == m.at; });
    if (it == spec.end())
      throw MissingSpectralData("perturbation.masses[" + std::to_string(k) + "]: " + to_string(m.at) +
                                " is not an eigenvalue of " + (standard ? "R" : "L"));
    masses.push_back({static_cast<int>(it - spec.begin()), m.chain, m.pos, m.xi});
  }
  return make_bundle(s.L, s.R, s.orientation, masses);
}

PerturbationBundle<B> to_float(const PerturbationBundle<Rational>& b) {
  std::vector<MassTerm<B>> masses;
  for (const auto& m : b.masses) masses.push_back({m.point, m.chain, m.pos, convert_poly<B>(m.xi)});
  return make_bundle(convert_poly<B>(b.L), convert_poly<B>(b.R), b.orientation, masses, spec_to_float(b.specL),
                     spec_to_float(b.specR));
}

RunResult run(const ExperimentConfig& cfg) {
  RunResult out;
  if (cfg.backend == Backend::Rational) {
    auto mu = exact_measure(cfg.measure);
    auto fam = family_from_measure(mu, cfg.N);
    out = run_with<Rational>(cfg, std::move(mu), exact_bundle(cfg.perturbation), std::move(fam));
  } else {
    PrecisionGuard guard(cfg.precision_bits);
    auto mu = to_float_measure(cfg.measure);
    const auto& s = cfg.perturbation;
    PerturbationBundle<B> b = s.jp ? jp_bundle(*s.jp, convert<B>(s.c), convert<B>(s.d), convert_poly<B>(s.jp_xi))
                                   : to_float(exact_bundle(s));
    Family<B> fam = cfg.measure.kind == MeasureSpec::Kind::JacobiPineiro
                        ? jp_family(jp_params(cfg.measure), static_cast<int>(cfg.N))
                        : family_from_measure(mu, cfg.N);
    out = run_with<B>(cfg, std::move(mu), std::move(b), std::move(fam));
    out.report["precision_bits"] = cfg.precision_bits;
  }
  out.report["format"] = "mopkit-report/1";
  out.report["backend"] = cfg.backend == Backend::Rational ? "rational" : "float";
  if (cfg.backend == Backend::Rational) out.report["precision_bits"] = nullptr;
  out.report["config"] = cfg.effective;
  out.report["config_hash"] = "fnv1a64:" + cfg.hash;
  out.report["pass"] = out.pass;
  return out;
}

}  // namespace mopkit::app
