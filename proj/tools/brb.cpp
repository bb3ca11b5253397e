/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brb/commands.hpp"
#include "brb/error.hpp"
#include "brb/oracle.hpp"

namespace {

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw brb::Error(brb::ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
  }
};

brb::LoadedScenario load(const std::string& builtin, const std::string& file) {
  return file.empty() ? brb::builtin_scenario(builtin) : brb::load_scenario_file(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on quantum resources from Bell and steering violations"};
  app.require_subcommand(1);
  Output output;
  app.add_option("-o,--output", output.path, "Write results to a file instead of stdout");

  // bound
  auto* bound = app.add_subcommand("bound", "Minimal resource for a given operator value");
  std::string builtin;
  std::string file;
  std::optional<double> value;
  std::optional<double> target;
  std::string measure = "probustness";
  auto* opt_builtin = bound->add_option("--builtin", builtin, "Built-in scenario")
                          ->check(CLI::IsMember(brb::builtin_names()));
  auto* opt_file = bound->add_option("--file", file, "Scenario JSON file");
  opt_builtin->excludes(opt_file);
  auto* opt_value = bound->add_option("--value", value, "Violation above the local bound");
  auto* opt_target = bound->add_option("--target", target, "Operator value Tr(rho I)");
  opt_value->excludes(opt_target);
  bound->add_option("--measure", measure, "probustness, renyi2 or relent")
      ->check(CLI::IsMember({"probustness", "renyi2", "relent"}));

  // curves
  double v = 0.001;
  std::string c_grid = "0:4:40";
  std::string ca_grid = "0:1.4142135623730951:40";
  std::string cb_grid = "0:1.4142135623730951:40";
  std::string v_grid = "0.05:0.8:15";

  auto* chsh = app.add_subcommand("chsh-curve", "Minimal E_R against the CHSH coefficient C");
  chsh->add_option("--v", v, "Violation above the local bound");
  chsh->add_option("--grid", c_grid, "start:stop:steps for C");

  auto* steer = app.add_subcommand("steering-curve", "Minimal E_R against C_A for F_2");
  steer->add_option("--v", v, "Violation above the local bound");
  steer->add_option("--grid", ca_grid, "start:stop:steps for C_A");

  auto* heat = app.add_subcommand("heatmap", "Minimal lambda1 over (C_A, C_B) for F_2");
  heat->add_option("--v", v, "Violation above the local bound");
  heat->add_option("--ca", ca_grid, "start:stop:steps for C_A");
  heat->add_option("--cb", cb_grid, "start:stop:steps for C_B");

  auto* minres = app.add_subcommand("min-resources", "Resource table for CHSH violations");
  minres->add_option("--grid", v_grid, "start:stop:steps for v");

  double relent_v = 0.2;
  auto* relent = app.add_subcommand("relent-compare", "Log-robustness, Renyi-2 and S_P against C");
  relent->add_option("--v", relent_v, "Violation above the local bound");
  relent->add_option("--grid", c_grid, "start:stop:steps for C");

  bool skip_cr = false;
  std::optional<std::uint64_t> seed;
  std::size_t restarts = 32;
  auto* i3322 = app.add_subcommand("i3322-check", "Reference values for I3322 at 4.001");
  i3322->add_flag("--skip-cr", skip_cr, "Skip the coherence basis search");
  i3322->add_option("--seed", seed, "PRNG seed (default BRB_SEED or 0xB311)");
  i3322->add_option("--restarts", restarts, "Basis search restarts")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (bound->parsed()) {
      if (builtin.empty() && file.empty()) {
        throw brb::Error(brb::ErrorCode::InvalidInput, "one of --builtin or --file is required");
      }
      if (!value && !target) {
        throw brb::Error(brb::ErrorCode::InvalidInput, "one of --value or --target is required");
      }
      const brb::LoadedScenario s = load(builtin, file);
      if (value && !std::isfinite(s.local_bound)) {
        throw brb::Error(brb::ErrorCode::InvalidInput,
                         "local bound unavailable for this scenario; use --target");
      }
      const brb::Measure m = brb::parse_measure(measure);
      const brb::BoundReport r =
          brb::compute_bound(s, target ? *target : s.local_bound + *value, m);
      output.write(brb::bound_report_json(r, m));
      return r.feasible ? 0 : 2;
    }
    if (chsh->parsed()) {
      output.write(brb::curve_csv(brb::chsh_curve(v, brb::parse_grid(c_grid)), "C"));
    } else if (steer->parsed()) {
      output.write(brb::curve_csv(brb::steering_curve(v, brb::parse_grid(ca_grid)), "C_A"));
    } else if (heat->parsed()) {
      output.write(brb::heatmap_csv(v, brb::parse_grid(ca_grid), brb::parse_grid(cb_grid)));
    } else if (minres->parsed()) {
      output.write(brb::min_resources_csv(brb::min_resources_rows(brb::parse_grid(v_grid))));
    } else if (relent->parsed()) {
      output.write(
          brb::relent_compare_csv(brb::relent_compare_rows(relent_v, brb::parse_grid(c_grid))));
    } else if (i3322->parsed()) {
      const brb::I3322Report r =
          brb::i3322_check(skip_cr, seed ? *seed : brb::default_seed(), restarts);
      output.write(brb::i3322_report_json(r));
      return r.all_pass() ? 0 : 3;
    }
  } catch (const brb::Error& e) {
    std::cerr << "brb: error: " << e.what() << "\n";
    return brb::exit_code_for(e.code());
  }
  return 0;
}
