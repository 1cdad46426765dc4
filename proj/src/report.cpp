#include <filesystem>
#include <fstream>
#include <sstream>

#include "mopkit/app.hpp"

namespace mopkit::app {

template <class T>
json matrix_json(const Matrix<T>& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(row);
  }
  return out;
}

// Same layout the config reader accepts: rows of entries, each a coefficient list from x^0 up.
template <class T>
json matpoly_json(const MatPoly<T>& P) {
  json out = json::array();
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
      json e = json::array();
      const Poly<T> entry = P.entry(i, j);
      for (const auto& c : entry.coeffs()) e.push_back(to_string(c));
      row.push_back(e);
    }
    out.push_back(row);
  }
  return out;
}

template <class T>
std::string matrix_csv(const Matrix<T>& m) {
  std::ostringstream os;
  write_csv(os, m);
  return os.str();
}

template json matrix_json(const Matrix<Rational>&);
template json matrix_json(const Matrix<BigFloat>&);
template json matpoly_json(const MatPoly<Rational>&);
template json matpoly_json(const MatPoly<BigFloat>&);
template std::string matrix_csv(const Matrix<Rational>&);
template std::string matrix_csv(const Matrix<BigFloat>&);

std::string write_outputs(const RunResult& r, const ExperimentConfig& cfg, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path report = fs::path(dir) / cfg.report_name;
  {
    std::ofstream out(report, std::ios::binary);
    out << r.report.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + report.string());
  }
  for (const auto& [name, text] : r.tables) {
    std::ofstream out(fs::path(dir) / name, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
  }
  return report.string();
}

}  // namespace mopkit::app
