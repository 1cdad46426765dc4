#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mopkit/app.hpp"

namespace mopkit::app {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) { throw ConfigInvalid(path, what); }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) invalid(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) invalid(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int parse_int(const json& j, const std::string& path, int lo, int hi) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) invalid(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::string parse_string(const json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected a string");
  return j.get<std::string>();
}

MeasureSpec parse_measure(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) invalid(path, "expected an object with a \"kind\"");
  MeasureSpec m;
  const std::string kind = parse_string(j["kind"], join(path, "kind"));
  if (kind == "discrete") {
    only_keys(j, path, {"kind", "nodes", "weights"});
    if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty())
      invalid(join(path, "nodes"), "expected a non-empty array");
    if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].size() != j["nodes"].size())
      invalid(join(path, "weights"), "expected one weight per node");
    for (std::size_t k = 0; k < j["nodes"].size(); ++k) {
      m.nodes.push_back(parse_rational(j["nodes"][k], at(join(path, "nodes"), k)));
      for (std::size_t i = 0; i < k; ++i)
        if (m.nodes[i] == m.nodes[k]) invalid(at(join(path, "nodes"), k), "repeated node");
      const std::string wp = at(join(path, "weights"), k);
      const json& w = j["weights"][k];
      m.weights.push_back(w.is_array() ? parse_matrix(w, wp) : Matrix<Rational>::Constant(1, 1, parse_rational(w, wp)));
      if (k == 0) {
        m.q = m.weights[0].rows();
        m.p = m.weights[0].cols();
      } else if (m.weights[k].rows() != m.q || m.weights[k].cols() != m.p) {
        invalid(wp, "weight shape differs from weights[0]");
      }
    }
  } else if (kind == "lebesgue") {
    only_keys(j, path, {"kind", "size"});
    m.kind = MeasureSpec::Kind::Lebesgue;
    m.q = m.p = j.contains("size") ? parse_int(j["size"], join(path, "size"), 1, 8) : 1;
  } else if (kind == "jacobi-pineiro") {
    only_keys(j, path, {"kind", "alpha", "beta"});
    m.kind = MeasureSpec::Kind::JacobiPineiro;
    m.q = 1;
    m.p = 3;
    if (!j.contains("alpha") || !j["alpha"].is_array() || j["alpha"].size() != 3)
      invalid(join(path, "alpha"), "expected three parameters");
    for (std::size_t a = 0; a < 3; ++a) m.jp.alpha[a] = parse_rational(j["alpha"][a], at(join(path, "alpha"), a));
    if (!j.contains("beta")) invalid(join(path, "beta"), "missing");
    m.jp.beta = parse_rational(j["beta"], join(path, "beta"));
  } else {
    invalid(join(path, "kind"), "unknown measure kind '" + kind + "' (discrete, lebesgue, jacobi-pineiro)");
  }
  return m;
}

LeadingSpec parse_leading(const json& j, const std::string& path) {
  only_keys(j, path, {"condition", "defect"});
  LeadingSpec s;
  const std::string c = j.contains("condition") ? parse_string(j["condition"], join(path, "condition")) : "";
  if (c == "C1") s.condition = LeadingCondition::C1;
  else if (c == "C2.1") s.condition = LeadingCondition::C2_1;
  else if (c == "C2.2") s.condition = LeadingCondition::C2_2;
  else invalid(join(path, "condition"), "expected C1, C2.1 or C2.2");
  s.defect = j.contains("defect") ? parse_int(j["defect"], join(path, "defect"), 0, 64) : 0;
  return s;
}

PerturbationSpec parse_perturbation(const json& j, const std::string& path, const MeasureSpec& m) {
  PerturbationSpec s;
  if (j.is_object() && j.contains("jp")) {
    only_keys(j, path, {"jp"});
    const std::string jp = join(path, "jp");
    only_keys(j["jp"], jp, {"which", "c", "d", "xi"});
    if (m.kind != MeasureSpec::Kind::JacobiPineiro) invalid(jp, "needs a jacobi-pineiro measure");
    const std::string which = j["jp"].contains("which") ? parse_string(j["jp"]["which"], join(jp, "which")) : "";
    if (which == "first") s.jp = JPPerturbation::First;
    else if (which == "second") s.jp = JPPerturbation::Second;
    else invalid(join(jp, "which"), "expected \"first\" or \"second\"");
    if (j["jp"].contains("c")) s.c = parse_rational(j["jp"]["c"], join(jp, "c"));
    if (j["jp"].contains("d")) s.d = parse_rational(j["jp"]["d"], join(jp, "d"));
    if (j["jp"].contains("xi")) {
      s.jp_xi = parse_matpoly(j["jp"]["xi"], join(jp, "xi"));
      const Eigen::Index want = *s.jp == JPPerturbation::First ? 3 : 2;
      if (s.jp_xi.rows() != 1 || s.jp_xi.cols() != want)
        invalid(join(jp, "xi"), "expected a 1 x " + std::to_string(want) + " polynomial row");
    }
    s.orientation = *s.jp == JPPerturbation::First ? Orientation::Dual : Orientation::Standard;
    return s;
  }
  only_keys(j, path, {"orientation", "L", "R", "masses", "leading"});
  if (j.contains("orientation")) {
    const std::string o = parse_string(j["orientation"], join(path, "orientation"));
    if (o == "standard") s.orientation = Orientation::Standard;
    else if (o == "dual") s.orientation = Orientation::Dual;
    else invalid(join(path, "orientation"), "expected \"standard\" or \"dual\"");
  }
  s.L = j.contains("L") ? parse_matpoly(j["L"], join(path, "L")) : MatPoly<Rational>::identity(m.q);
  s.R = j.contains("R") ? parse_matpoly(j["R"], join(path, "R")) : MatPoly<Rational>::identity(m.p);
  if (s.L.rows() != m.q || s.L.cols() != m.q)
    invalid(join(path, "L"), "expected " + std::to_string(m.q) + " x " + std::to_string(m.q));
  if (s.R.rows() != m.p || s.R.cols() != m.p)
    invalid(join(path, "R"), "expected " + std::to_string(m.p) + " x " + std::to_string(m.p));
  if (j.contains("masses")) {
    const std::string mp = join(path, "masses");
    if (!j["masses"].is_array()) invalid(mp, "expected an array");
    for (std::size_t k = 0; k < j["masses"].size(); ++k) {
      const std::string ep = at(mp, k);
      const json& e = j["masses"][k];
      only_keys(e, ep, {"at", "chain", "pos", "xi"});
      MassSpec ms;
      if (!e.contains("at")) invalid(join(ep, "at"), "missing");
      ms.at = parse_rational(e["at"], join(ep, "at"));
      if (e.contains("chain")) ms.chain = parse_int(e["chain"], join(ep, "chain"), 0, 64);
      if (e.contains("pos")) ms.pos = parse_int(e["pos"], join(ep, "pos"), 0, 64);
      if (!e.contains("xi")) invalid(join(ep, "xi"), "missing");
      ms.xi = parse_matpoly(e["xi"], join(ep, "xi"));
      const bool standard = s.orientation == Orientation::Standard;
      const Eigen::Index r = standard ? m.q : 1, c = standard ? 1 : m.p;
      if (ms.xi.rows() != r || ms.xi.cols() != c)
        invalid(join(ep, "xi"), "expected " + std::to_string(r) + " x " + std::to_string(c));
      s.masses.push_back(ms);
    }
  }
  if (j.contains("leading")) {
    const std::string lp = join(path, "leading");
    only_keys(j["leading"], lp, {"L", "R"});
    if (j["leading"].contains("L")) s.leadingL = parse_leading(j["leading"]["L"], join(lp, "L"));
    if (j["leading"].contains("R")) s.leadingR = parse_leading(j["leading"]["R"], join(lp, "R"));
  }
  return s;
}

}  // namespace

Rational parse_rational(const json& j, const std::string& path) {
  std::string text;
  if (j.is_string()) text = j.get<std::string>();
  else if (j.is_number()) text = j.dump();  // shortest round-trip form, read back exactly
  else invalid(path, "expected a number or a \"num/den\" string");
  try {
    return parse_scalar<Rational>(text);
  } catch (const std::exception& e) {
    invalid(path, "cannot read '" + text + "' as an exact rational");
  }
}

Matrix<Rational> parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) invalid(path, "expected a non-empty array of rows");
  Eigen::Index cols = -1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].empty()) invalid(at(path, i), "expected a non-empty row");
    if (cols >= 0 && static_cast<Eigen::Index>(j[i].size()) != cols) invalid(at(path, i), "ragged row");
    cols = static_cast<Eigen::Index>(j[i].size());
  }
  Matrix<Rational> m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t c = 0; c < j[i].size(); ++c) m(i, c) = parse_rational(j[i][c], at(at(path, i), c));
  return m;
}

// Rows of entries, each entry a coefficient list from x^0 up; a bare coefficient list is a 1 x 1 polynomial.
MatPoly<Rational> parse_matpoly(const json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected a polynomial matrix (rows of coefficient lists)");
  if (!j.empty() && (j[0].is_string() || j[0].is_number())) {
    MatPoly<Rational> P(1, 1);
    std::vector<Rational> c;
    for (std::size_t k = 0; k < j.size(); ++k) c.push_back(parse_rational(j[k], at(path, k)));
    P.set_entry(0, 0, Poly<Rational>(std::move(c)));
    return P;
  }
  if (j.empty()) invalid(path, "expected at least one row");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) invalid(at(path, 0), "expected a non-empty row of coefficient lists");
  MatPoly<Rational> P(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = at(path, i);
    if (!j[i].is_array()) invalid(rp, "expected a row of coefficient lists");
    if (j[i].size() != cols) invalid(rp, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string ep = at(rp, c);
      const json& e = j[i][c];
      if (!e.is_array()) invalid(ep, "expected a coefficient list");
      std::vector<Rational> co;
      for (std::size_t k = 0; k < e.size(); ++k) co.push_back(parse_rational(e[k], at(ep, k)));
      P.set_entry(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c), Poly<Rational>(std::move(co)));
    }
  }
  return P;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigInvalid("", std::string("not valid JSON: ") + e.what());
  }
}

ExperimentConfig parse_config(const json& raw_in, const Overrides& o) {
  json raw = raw_in;
  if (!raw.is_object()) invalid("", "config must be a JSON object");
  if (o.backend) raw["backend"] = *o.backend;
  if (o.precision_bits) raw["precision_bits"] = *o.precision_bits;
  only_keys(raw, "", {"backend", "precision_bits", "measure", "perturbation", "N", "probes", "suites", "report"});

  ExperimentConfig c;
  if (raw.contains("backend")) {
    const std::string b = parse_string(raw["backend"], "backend");
    if (b == "rational") c.backend = Backend::Rational;
    else if (b == "float") c.backend = Backend::Float;
    else invalid("backend", "expected \"rational\" or \"float\"");
  }
  if (raw.contains("precision_bits")) c.precision_bits = parse_int(raw["precision_bits"], "precision_bits", 32, 1 << 16);
  if (!raw.contains("measure")) invalid("measure", "missing");
  c.measure = parse_measure(raw["measure"], "measure");
  c.perturbation = raw.contains("perturbation") ? parse_perturbation(raw["perturbation"], "perturbation", c.measure)
                                                : parse_perturbation(json::object(), "perturbation", c.measure);
  if (raw.contains("N")) c.N = parse_int(raw["N"], "N", 1, 400);
  if (raw.contains("probes")) {
    if (!raw["probes"].is_array()) invalid("probes", "expected an array");
    for (std::size_t k = 0; k < raw["probes"].size(); ++k)
      c.probes.push_back(parse_rational(raw["probes"][k], at("probes", k)));
  }
  if (raw.contains("suites")) {
    if (!raw["suites"].is_array()) invalid("suites", "expected an array");
    for (std::size_t k = 0; k < raw["suites"].size(); ++k) {
      const std::string s = parse_string(raw["suites"][k], at("suites", k));
      const auto& ks = known_suites();
      if (std::find(ks.begin(), ks.end(), s) == ks.end()) invalid(at("suites", k), "unknown suite '" + s + "'");
      if (std::find(c.suites.begin(), c.suites.end(), s) != c.suites.end()) invalid(at("suites", k), "repeated suite");
      if (s == "jp-case-study" && !c.perturbation.jp) invalid(at("suites", k), "needs a perturbation.jp block");
      c.suites.push_back(s);
    }
  } else {
    c.suites = {"factor", "perturb", "residuals", "tau", "existence"};
  }
  if (raw.contains("report")) {
    c.report_name = parse_string(raw["report"], "report");
    if (c.report_name.empty() || c.report_name.find('/') != std::string::npos)
      invalid("report", "expected a plain file name");
  }
  c.effective = raw;
  c.hash = fnv1a64_hex(raw.dump());
  return c;
}

json diagnostics_json(const std::vector<Diagnostic>& d) {
  json out = json::array();
  for (const auto& x : d) out.push_back({{"kind", x.kind}, {"path", x.path}, {"message", x.message}});
  return out;
}

namespace {

std::string block_name(const std::string& side, const LeadingSpec& s, const LeadingReport& r, Eigen::Index size) {
  const int d = s.defect, N = r.N;
  const Eigen::Index n = size;
  auto range = [](long lo, long hi) { return std::to_string(lo) + ".." + std::to_string(hi); };
  if (r.message.rfind("leading coefficient does not", 0) == 0) {
    const bool c21 = s.condition == LeadingCondition::C2_1;
    return side + " coefficient of x^" + std::to_string(N) + ": block rows " + range(c21 ? 0 : d, c21 ? n - d - 1 : n - 1) +
           ", columns " + range(c21 ? d : 0, c21 ? n - 1 : n - d - 1) +
           " must be the identity and every other entry zero";
  }
  if (r.message.rfind("subleading", 0) == 0) {
    const bool c21 = s.condition == LeadingCondition::C2_1;
    return side + " coefficient of x^" + std::to_string(N - 1) + ": block rows " +
           range(c21 ? n - d : 0, c21 ? n - 1 : d - 1) + ", columns " + range(c21 ? 0 : n - d, c21 ? d - 1 : n - 1) +
           " must be the identity";
  }
  return side + ": " + r.message;
}

void check_leading(const MatPoly<Rational>& P, const std::optional<LeadingSpec>& s, const std::string& side,
                   std::vector<Diagnostic>& out) {
  if (!s) return;
  const LeadingReport r = leading_check(P, s->condition, s->defect);
  if (!r.ok) out.push_back({"LeadingCondition", "perturbation.leading." + side, block_name(side, *s, r, P.rows())});
}

}  // namespace

std::vector<Diagnostic> validate(const json& raw, const Overrides& o) {
  std::vector<Diagnostic> out;
  ExperimentConfig c;
  try {
    c = parse_config(raw, o);
  } catch (const ConfigInvalid& e) {
    out.push_back({"ConfigInvalid", e.path(), e.what()});
    return out;
  }
  const auto& m = c.measure;
  const auto& s = c.perturbation;
  auto guard = [&](const std::string& path, auto&& body) {
    try {
      body();
      return true;
    } catch (const PoleOnSupport& e) {
      out.push_back({"IntegrabilityViolation", path, e.what()});
    } catch (const Error& e) {
      out.push_back({e.kind(), path, e.what()});
    } catch (const std::exception& e) {
      out.push_back({"Error", path, e.what()});
    }
    return false;
  };

  if (m.kind == MeasureSpec::Kind::JacobiPineiro) {
    if (c.backend != Backend::Float)
      out.push_back({"BackendUnsupported", "backend", "jacobi-pineiro measures need the float backend"});
    PrecisionGuard pg(c.precision_bits);
    JPParams<BigFloat> p{{convert<BigFloat>(m.jp.alpha[0]), convert<BigFloat>(m.jp.alpha[1]),
                          convert<BigFloat>(m.jp.alpha[2])},
                         convert<BigFloat>(m.jp.beta)};
    if (!guard("measure", [&] { jp_validate(p); })) return out;
    if (s.jp) {
      guard("perturbation.jp", [&] {
        MatPoly<BigFloat> xi;
        if (!s.jp_xi.is_zero()) {
          std::vector<Matrix<BigFloat>> co;
          for (const auto& k : s.jp_xi.coeffs()) co.push_back(convert<BigFloat>(k));
          xi = MatPoly<BigFloat>(s.jp_xi.rows(), s.jp_xi.cols(), co);
        }
        auto b = jp_bundle(*s.jp, convert<BigFloat>(s.c), convert<BigFloat>(s.d), xi);
        perturbed_measure(b, jp_measure(p));
      });
      return out;
    }
  }

  check_leading(s.L, s.leadingL, "L", out);
  check_leading(s.R, s.leadingR, "R", out);

  PerturbationBundle<Rational> b;
  if (!guard("perturbation", [&] { b = exact_bundle(s); })) return out;

  if (m.kind == MeasureSpec::Kind::Discrete) {
    // an atom at an eigenvalue of the divided side is a pole of the perturbed weight
    const auto& spec = s.orientation == Orientation::Standard ? b.specR : b.specL;
    const char* side = s.orientation == Orientation::Standard ? "R" : "L";
    for (const auto& sp : spec)
      for (std::size_t k = 0; k < m.nodes.size(); ++k)
        if (sp.value == m.nodes[k])
          out.push_back({"IntegrabilityViolation", "measure.nodes[" + std::to_string(k) + "]",
                         std::string("eigenvalue ") + to_string(sp.value) + " of " + side +
                             " sits on a discrete atom; masses cannot absorb the pole"});
    if (!out.empty()) return out;
    guard("N", [&] { lu_nopivot(build_moment_matrix(exact_measure(m), c.N)); });
  }
  if (m.kind != MeasureSpec::Kind::JacobiPineiro)
    guard("perturbation", [&] { perturbed_measure(b, exact_measure(m)); });
  return out;
}

}  // namespace mopkit::app
