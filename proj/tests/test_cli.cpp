#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mopkit/app.hpp"

using namespace mopkit;
using namespace mopkit::app;

namespace {

json config(const std::string& name) {
  return load_json_file(std::string(MOPKIT_SOURCE_DIR) + "/tests/configs/" + name + ".json");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("minimal config: identity perturbation of Lebesgue, all residuals zero") {
  const auto cfg = parse_config(config("minimal"));
  const auto r = run(cfg);
  CHECK(r.pass);
  const auto& res = r.report["suites"]["residuals"];
  for (const char* k : {"omegaB_minus_BL", "AOmega_minus_RA", "moments", "cauchy_C", "cauchy_D"})
    CHECK(res[k] == "0/1");
  // empty determinant convention
  for (const auto& t : r.report["suites"]["tau"]["tau"]) CHECK(t == "1/1");
  CHECK(r.report["suites"]["perturb"]["max_difference_vs_oracle"] == "0/1");
}

TEST_CASE("scalar Christoffel config: tau ledger is B_n(2)") {
  const auto r = run(parse_config(config("christoffel")));
  CHECK(r.pass);
  const auto& tau = r.report["suites"]["tau"]["tau"];
  // monic shifted Legendre: B_1 = x - 1/2, B_2 = x^2 - x + 1/6, B_3 = x^3 - 3/2 x^2 + 3/5 x - 1/20, at x = 2
  CHECK(tau[0] == "1/1");
  CHECK(tau[1] == "3/2");
  CHECK(tau[2] == "13/6");
  CHECK(tau[3] == "63/20");
  CHECK(r.tables.count("tau.csv") == 1);
  CHECK(r.tables.at("tau.csv").find("2,13/6\n") != std::string::npos);
}

TEST_CASE("float backend override reports decimal strings with the precision") {
  const auto cfg = parse_config(config("christoffel"), Overrides{"float", 128});
  const auto r = run(cfg);
  CHECK(r.pass);
  CHECK(r.report["backend"] == "float");
  CHECK(r.report["precision_bits"] == 128);
  PrecisionGuard g(128);
  const BigFloat t2(r.report["suites"]["tau"]["tau"][2].get<std::string>());
  CHECK(bmp::abs(t2 - BigFloat(13) / 6) < BigFloat("1e-30"));
  // overrides are part of the hashed config
  CHECK(cfg.hash != parse_config(config("christoffel")).hash);
}

TEST_CASE("malformed polynomial array raises ConfigInvalid with the field path") {
  try {
    parse_config(config("bad_poly"));
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.path() == "perturbation.L[0][0][1]");
  }
  json j = config("minimal");
  j["perturbation"] = {{"R", json::array({json::array({json::array({"1"}), json::array({"0"})})})}};
  CHECK_THROWS_AS(parse_config(j), ConfigInvalid);
  j = config("minimal");
  j["suites"] = {"factor", "plot"};
  try {
    parse_config(j);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(e.path() == "suites[1]");
  }
  j = config("minimal");
  j["surprise"] = 1;
  CHECK_THROWS_AS(parse_config(j), ConfigInvalid);
}

TEST_CASE("validate: leading-form violation names the coefficient block") {
  const auto d = validate(config("bad_leading"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == "LeadingCondition");
  CHECK(d[0].path == "perturbation.leading.R");
  CHECK(d[0].message.find("coefficient of x^1: block rows 0..0, columns 1..1") != std::string::npos);
}

TEST_CASE("validate: eigenvalue on a discrete atom is an integrability violation") {
  const auto d = validate(config("atom_pole"));
  REQUIRE(d.size() == 1);
  CHECK(d[0].kind == "IntegrabilityViolation");
  CHECK(d[0].path == "measure.nodes[1]");
}

TEST_CASE("validate: valid case-study configs produce no diagnostics") {
  CHECK(validate(config("jp_case_study")).empty());
  CHECK(validate(config("jp_second")).empty());
  CHECK(validate(config("discrete_dual")).empty());
  CHECK(validate(config("christoffel")).empty());
  // the case study has no rational backend
  const auto d = validate(config("jp_case_study"), Overrides{"rational", std::nullopt});
  REQUIRE_FALSE(d.empty());
  CHECK(d[0].kind == "BackendUnsupported");
  // schema errors come back as diagnostics, not exceptions
  const auto bad = validate(config("bad_poly"));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].kind == "ConfigInvalid");
}

TEST_CASE("discrete configs with masses pass every suite exactly") {
  for (const char* name : {"discrete_dual", "standard_shifted"}) {
    CHECK(validate(config(name)).empty());
    const auto r = run(parse_config(config(name)));
    CHECK_MESSAGE(r.pass, name);
    for (const auto& [suite, s] : r.report["suites"].items()) CHECK_MESSAGE(s["status"] == "pass", name << " " << suite);
  }
  const auto r = run(parse_config(config("discrete_dual")));
  CHECK(r.report["suites"]["stieltjes"]["identity_residual"] == json::array({"0/1", "0/1"}));
}

TEST_CASE("case-study configs pass at 256 bits") {
  for (const char* name : {"jp_case_study", "jp_second"}) {
    const auto r = run(parse_config(config(name)));
    CHECK_MESSAGE(r.pass, name);
    CHECK(r.report["suites"]["jp-case-study"]["status"] == "pass");
  }
}

TEST_CASE("run is deterministic and self-describing") {
  namespace fs = std::filesystem;
  const auto cfg = parse_config(config("discrete_dual"));
  const fs::path base = fs::temp_directory_path() / "mopkit_test_cli";
  fs::remove_all(base);
  const std::string a = write_outputs(run(cfg), cfg, (base / "a").string());
  const std::string b = write_outputs(run(cfg), cfg, (base / "b").string());
  CHECK(slurp(a) == slurp(b));
  for (const char* t : {"moments.csv", "omega.csv", "tau.csv"}) CHECK(slurp(base / "a" / t) == slurp(base / "b" / t));
  const json rep = json::parse(slurp(a));
  CHECK(rep["config_hash"] == "fnv1a64:" + cfg.hash);
  CHECK(rep["config"] == cfg.effective);
  CHECK(rep["precision_bits"].is_null());
  fs::remove_all(base);
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}
