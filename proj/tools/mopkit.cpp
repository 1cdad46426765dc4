// mopkit run <config.json> | mopkit validate <config.json>

#include <iostream>

#include <CLI11.hpp>

#include "mopkit/app.hpp"

using namespace mopkit;

int main(int argc, char** argv) {
  CLI::App cli{"Matrix biorthogonal polynomial perturbation toolkit"};
  cli.require_subcommand(1);

  std::string config, out_dir = "mopkit-out", backend;
  int precision = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--precision", precision, "float backend precision in bits")->check(CLI::Range(32, 1 << 16));
    sub->add_option("--backend", backend, "scalar backend")->check(CLI::IsMember({"rational", "float"}));
  };
  CLI::App* run = cli.add_subcommand("run", "run the configured suites and write the report");
  add_common(run);
  run->add_option("--out", out_dir, "output directory for the report and CSV tables");
  CLI::App* val = cli.add_subcommand("validate", "schema and semantic checks without running suites");
  add_common(val);

  CLI11_PARSE(cli, argc, argv);

  app::Overrides o;
  if (!backend.empty()) o.backend = backend;
  if (precision > 0) o.precision_bits = precision;

  try {
    const app::json raw = app::load_json_file(config);
    if (val->parsed()) {
      const auto d = app::validate(raw, o);
      std::cout << app::diagnostics_json(d).dump(2) << '\n';
      return d.empty() ? 0 : 1;
    }
    const app::ExperimentConfig cfg = app::parse_config(raw, o);
    const app::RunResult r = app::run(cfg);
    const std::string path = app::write_outputs(r, cfg, out_dir);
    for (const auto& [name, s] : r.report["suites"].items()) {
      std::cout << name << ": " << s["status"].get<std::string>();
      if (s.contains("message")) std::cout << " (" << s["message"].get<std::string>() << ")";
      std::cout << '\n';
    }
    std::cout << (r.pass ? "PASS " : "FAIL ") << path << '\n';
    return r.pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
