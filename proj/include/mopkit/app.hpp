#ifndef MOPKIT_APP_HPP
#define MOPKIT_APP_HPP

// Config-driven experiment runner behind the `mopkit` executable.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mopkit/jacobi_pineiro.hpp"

namespace mopkit::app {

using json = nlohmann::json;

enum class Backend { Rational, Float };

// Every number in a config is read exactly; the float backend converts after parsing.
struct MeasureSpec {
  enum class Kind { Discrete, Lebesgue, JacobiPineiro } kind = Kind::Discrete;
  Eigen::Index q = 1, p = 1;
  std::vector<Rational> nodes;
  std::vector<Matrix<Rational>> weights;  // one q x p weight per node
  JPParams<Rational> jp{};
};

struct LeadingSpec {
  LeadingCondition condition = LeadingCondition::C1;
  int defect = 0;
};

// Mass attached at the eigenvalue `at` of the divided side (R standard, L dual), chain position `pos`.
struct MassSpec {
  Rational at;
  int chain = 0, pos = 0;
  MatPoly<Rational> xi;
};

struct PerturbationSpec {
  Orientation orientation = Orientation::Standard;
  MatPoly<Rational> L, R;
  std::vector<MassSpec> masses;
  std::optional<LeadingSpec> leadingL, leadingR;
  // Named case-study perturbation; L, R and masses are then derived.
  std::optional<JPPerturbation> jp;
  Rational c{1}, d{0};
  MatPoly<Rational> jp_xi;
};

struct ExperimentConfig {
  Backend backend = Backend::Rational;
  int precision_bits = 256;
  MeasureSpec measure;
  PerturbationSpec perturbation;
  Eigen::Index N = 6;
  std::vector<Rational> probes;
  std::vector<std::string> suites;
  std::string report_name = "report.json";
  json effective;    // normalized config with overrides applied, embedded in the report
  std::string hash;  // FNV-1a 64 of effective.dump()
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"factor",    "perturb",      "residuals", "tau",
                                          "stieltjes", "jp-case-study", "existence"};
  return s;
}

struct Overrides {
  std::optional<std::string> backend;
  std::optional<int> precision_bits;
};

// Throws ConfigInvalid naming the offending field path.
ExperimentConfig parse_config(const json& raw, const Overrides& o = {});
json load_json_file(const std::string& path);

std::string fnv1a64_hex(const std::string& bytes);

struct Diagnostic {
  std::string kind;  // ConfigInvalid, LeadingCondition, NonRationalSpectrum, IntegrabilityViolation, ...
  std::string path;
  std::string message;
};

std::vector<Diagnostic> validate(const json& raw, const Overrides& o = {});
json diagnostics_json(const std::vector<Diagnostic>& d);

struct RunResult {
  bool pass = true;
  json report;
  std::map<std::string, std::string> tables;  // file name -> CSV text
};

RunResult run(const ExperimentConfig& cfg);

// Writes the report and tables under dir (created if missing); returns the report path.
std::string write_outputs(const RunResult& r, const ExperimentConfig& cfg, const std::string& dir);

// Serialization shared by the report and the config reader.
template <class T>
json scalar_json(const T& x) {
  return to_string(x);
}
template <class T>
json matrix_json(const Matrix<T>& m);
template <class T>
json matpoly_json(const MatPoly<T>& P);
template <class T>
std::string matrix_csv(const Matrix<T>& m);

MatPoly<Rational> parse_matpoly(const json& j, const std::string& path);
Matrix<Rational> parse_matrix(const json& j, const std::string& path);
Rational parse_rational(const json& j, const std::string& path);

// Exact spectra and mass resolution; throws MissingSpectralData when a mass names no eigenvalue.
PerturbationBundle<Rational> exact_bundle(const PerturbationSpec& s);
// Exact bundle converted entrywise, spectra included.
PerturbationBundle<BigFloat> to_float(const PerturbationBundle<Rational>& b);
MatrixMeasure<Rational> exact_measure(const MeasureSpec& m);
MatrixMeasure<BigFloat> to_float_measure(const MeasureSpec& m);

}  // namespace mopkit::app

#endif
