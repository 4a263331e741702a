// infogeo: entropic measures, geometry and quantum reactivity from the
// command line. See README.md for usage.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "infogeo/commands.hpp"

namespace {

void add_common(CLI::App* cmd, infogeo::cli::RunConfig& cfg) {
  cmd->add_option("--output", cfg.output, "Report path (default: standard output)");
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--tolerance", cfg.tolerances.normalization,
                  "Normalization tolerance for input distributions");
  cmd->add_option("--radicand-clamp", cfg.tolerances.radicand_clamp,
                  "Heron radicand clamp window");
  cmd->add_option("--divergence-threshold", cfg.tolerances.divergence,
                  "Mean volume below which reactivity is DIVERGENT");
}

void add_settings(CLI::App* cmd, infogeo::cli::RunConfig& cfg) {
  cmd->add_option("--settings", cfg.settings, "Number of measurement settings");
  cmd->add_option("--scheme", cfg.scheme, "uniform_sphere or grid");
  cmd->add_option("--n-theta", cfg.n_theta, "Grid polar divisions");
  cmd->add_option("--n-phi", cfg.n_phi, "Grid azimuthal divisions");
  cmd->add_option("--setting-config", cfg.setting_config, "Setting config JSON file");
  cmd->add_option("--facets", cfg.facets, "Surface convention: sum or mean");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic information geometry and quantum reactivity"};
  app.set_version_flag("--version", std::string(infogeo::cli::kToolVersion));
  app.require_subcommand(1);

  infogeo::cli::RunConfig cfg;

  auto* measures = app.add_subcommand("measures", "Entropies and mutual informations");
  measures->add_option("--input", cfg.input, "Distribution JSON or sample CSV")->required();
  measures->add_option("--subset", cfg.subset, "Comma-separated variable names")->delimiter(',');
  add_common(measures, cfg);

  auto* geometry = app.add_subcommand("geometry", "Distances, areas, volumes");
  geometry->add_option("--input", cfg.input, "Distribution JSON or sample CSV")->required();
  geometry->add_option("--subset", cfg.subset, "Comma-separated variable names")->delimiter(',');
  geometry->add_flag("--volume", cfg.require_volume, "Require quadruple volumes");
  geometry->add_option("--facets", cfg.facets, "Surface convention: sum or mean");
  add_common(geometry, cfg);

  auto* quantum = app.add_subcommand("quantum", "Measurement-averaged reactivity of a state");
  quantum->add_option("--input", cfg.input, "State spec JSON")->required();
  add_common(quantum, cfg);
  add_settings(quantum, cfg);

  auto* sweep = app.add_subcommand("sweep", "Reactivity along cos a|0..0> + sin a|1..1>");
  sweep->add_option("--qubits", cfg.qubits, "Qubit count");
  sweep->add_option("--alpha-start", cfg.alpha_start, "First alpha (radians)");
  sweep->add_option("--alpha-stop", cfg.alpha_stop, "Last alpha (radians)");
  sweep->add_option("--steps", cfg.steps, "Number of alpha values");
  add_common(sweep, cfg);
  add_settings(sweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << infogeo::cli::error_object("USAGE", e.what());
    return infogeo::cli::kValidationError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto result = infogeo::cli::run(cfg);
  if (result.exit_code != infogeo::cli::kSuccess) {
    std::cerr << result.error;
    return result.exit_code;
  }
  if (cfg.output.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cerr << infogeo::cli::error_object("MALFORMED_INPUT", "cannot write " + cfg.output);
      return infogeo::cli::kValidationError;
    }
  }
  return infogeo::cli::kSuccess;
}
