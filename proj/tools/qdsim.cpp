#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qdt/config.hpp"
#include "qdt/errors.hpp"
#include "qdt/version.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  qdt::require(in.good(), qdt::ErrorKind::Configuration, "cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  qdt::require(out.good(), qdt::ErrorKind::Configuration,
               "cannot open output file '" + out_path + "'");
  out << text;
}

// "start:stop:count"
qdt::ScanAxis parse_range(const std::string& text, const std::string& flag) {
  qdt::ScanAxis axis;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(text);
  if (!(in >> axis.start >> sep1 >> axis.stop >> sep2 >> axis.count) || sep1 != ':' ||
      sep2 != ':' || !in.eof()) {
    qdt::raise(qdt::ErrorKind::Configuration,
               flag + ": expected start:stop:count, got '" + text + "'");
  }
  return axis;
}

// "param=start:stop:count"
qdt::SweepAxis parse_sweep_axis(const std::string& text) {
  const auto eq = text.find('=');
  qdt::require(eq != std::string::npos && eq > 0, qdt::ErrorKind::Configuration,
               "--axis: expected param=start:stop:count, got '" + text + "'");
  const qdt::ScanAxis range = parse_range(text.substr(eq + 1), "--axis");
  return {text.substr(0, eq), range.start, range.stop, range.count};
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state transport in quantum-dot systems weakly coupled to fermionic leads"};
  app.set_version_flag("--version", qdt::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  double tol = 1e-10;
  double step = 1e-4;

  auto add_common = [&](CLI::App* sub, bool with_tol, bool with_step) {
    sub->add_option("--config", config_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_path, "Output path (default: stdout)");
    if (with_tol) sub->add_option("--tol", tol, "Zero-current tolerance for classification");
    if (with_step) sub->add_option("--step", step, "Finite-difference step");
  };

  CLI::App* steady = app.add_subcommand("steady", "Solve one scenario and report currents");
  add_common(steady, true, false);

  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate a 1- or 2-parameter grid as CSV");
  add_common(sweep, true, false);
  std::vector<std::string> axis_specs;
  sweep->add_option("--axis", axis_specs, "Swept axis as param=start:stop:count (max 2)")
      ->required()
      ->expected(1, 2);

  CLI::App* onsager = app.add_subcommand("onsager", "Extract the 2x2 kinetic matrix");
  add_common(onsager, false, true);

  CLI::App* scan = app.add_subcommand("icc-scan", "Classify a force grid and report "
                                                  "inverse-current witnesses");
  add_common(scan, true, false);
  std::string force_e_spec;
  std::string force_n_spec;
  std::string kappa_spec;
  scan->add_option("--force-e", force_e_spec, "Energy-force axis start:stop:count")->required();
  scan->add_option("--force-n", force_n_spec, "Particle-force axis start:stop:count")->required();
  scan->add_option("--kappa", kappa_spec, "Interdot-interaction axis start:stop:count");

  CLI::App* validate = app.add_subcommand("validate", "Parse a config and echo the scenario");
  add_common(validate, false, false);

  CLI11_PARSE(app, argc, argv);

  try {
    const qdt::Scenario scenario = qdt::parse_config_text(read_file(config_path));
    if (steady->parsed()) {
      write_output(dump(qdt::run_steady_document(scenario, tol)), out_path);
    } else if (sweep->parsed()) {
      std::vector<qdt::SweepAxis> axes;
      for (const auto& spec : axis_specs) axes.push_back(parse_sweep_axis(spec));
      write_output(qdt::run_sweep_csv(scenario, axes, tol), out_path);
    } else if (onsager->parsed()) {
      write_output(dump(qdt::run_onsager_document(scenario, step)), out_path);
    } else if (scan->parsed()) {
      std::optional<qdt::ScanAxis> kappa;
      if (!kappa_spec.empty()) kappa = parse_range(kappa_spec, "--kappa");
      write_output(dump(qdt::run_icc_scan_document(scenario, parse_range(force_e_spec, "--force-e"),
                                                   parse_range(force_n_spec, "--force-n"), kappa,
                                                   tol)),
                   out_path);
    } else if (validate->parsed()) {
      json document;
      document["valid"] = true;
      document["scenario"] = qdt::serialize_scenario(scenario);
      document["warnings"] = scenario.warnings;
      write_output(dump(document), out_path);
    }
  } catch (const qdt::Error& error) {
    json failure;
    failure["error"] = {{"kind", std::string(qdt::to_string(error.kind()))},
                        {"message", error.what()}};
    std::cerr << dump(failure);
    return 1;
  } catch (const std::exception& error) {
    json failure;
    failure["error"] = {{"kind", "internal"}, {"message", error.what()}};
    std::cerr << dump(failure);
    return 1;
  }
  return 0;
}
