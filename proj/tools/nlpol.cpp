#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "nlpol/commands.hpp"
#include "nlpol/error.hpp"
#include "nlpol/manifest.hpp"

// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 I/O error.
int main(int argc, char** argv) {
  CLI::App app{"Nonlocal nonlinear polariton toolkit"};
  app.set_version_flag("--version", nlpol::code_version());
  app.require_subcommand(1);
  app.fallthrough();

  nlpol::CommonOptions common;
  for (int i = 0; i < argc; ++i) common.arguments.emplace_back(argv[i]);
  std::uint64_t seed = 0;
  unsigned workers = 0;
  app.add_option("--preset", common.preset, "Shipped scenario preset");
  app.add_option("--config", common.config_path, "Scenario YAML file");
  app.add_option("--set", common.overrides, "Override section.key=value (repeatable)");
  app.add_option("--out", common.out_dir, "Output directory (default $NLPOL_OUT_DIR or .)");
  auto* seed_opt = app.add_option("--seed", seed, "Master RNG seed");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads for ensembles")
                          ->check(CLI::PositiveNumber);
  app.add_option("--scheme", common.scheme, "mean-field or full-three-term")
      ->check(CLI::IsMember({"mean-field", "full-three-term"}));

  nlpol::SpectrumOptions spectrum;
  double spectrum_t = -1;
  auto* spec_cmd = app.add_subcommand("spectrum", "Bogoliubov spectrum table");
  spec_cmd->add_option("--k-min", spectrum.k_min, "Smallest k [1/m]");
  spec_cmd->add_option("--k-max", spectrum.k_max, "Largest k [1/m] (default from the scenario)");
  spec_cmd->add_option("--k-count", spectrum.k_count, "Number of k values");
  auto* spec_t = spec_cmd->add_option("--t", spectrum_t, "Time for G_k and N_k [s] (default L/v)");

  nlpol::SimulateOptions simulate;
  std::string sim_mode = "ensemble";
  double sim_t = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Propagate noise ensembles or seeded modes");
  sim_cmd->add_option("--mode", sim_mode, "ensemble or scan")->check(CLI::IsMember({"ensemble", "scan"}));
  auto* sim_t_opt = sim_cmd->add_option("--t-final", sim_t, "Final time [s] (default run.t_final)");
  sim_cmd->add_option("--k-min", simulate.k_min, "Scan: smallest k [1/m]");
  sim_cmd->add_option("--k-max", simulate.k_max, "Scan: largest k [1/m]");
  sim_cmd->add_option("--k-count", simulate.k_count, "Scan: number of k values");

  nlpol::CorrelationOptions corr;
  std::string corr_mode = "both";
  double corr_t = 0;
  auto* corr_cmd = app.add_subcommand("correlations", "Intensity correlations g2(dz)");
  corr_cmd->add_option("--mode", corr_mode, "analytic, simulated or both")
      ->check(CLI::IsMember({"analytic", "simulated", "both"}));
  auto* corr_t_opt = corr_cmd->add_option("--t", corr_t, "Time [s] (default run.t_final)");
  corr_cmd->add_option("--dz-max", corr.dz_max, "Largest separation [m] (default 6 l)");
  corr_cmd->add_option("--dz-count", corr.dz_count, "Number of separations (default: every grid point)");

  nlpol::BudgetOptions budget;
  double scale = 0;
  auto* budget_cmd = app.add_subcommand("budget", "Decoherence budget");
  budget_cmd->add_option("--rescue", budget.rescues, "omega:F or density:F (repeatable)");
  auto* scale_opt = budget_cmd->add_option("--feature-scale", scale, "Feature scale [1/s] (default from spectrum)");

  auto* preset_cmd = app.add_subcommand("preset", "Inspect shipped presets");
  preset_cmd->require_subcommand(1);
  auto* list_cmd = preset_cmd->add_subcommand("list", "List preset names");
  std::string show_name;
  auto* show_cmd = preset_cmd->add_subcommand("show", "Print a preset");
  show_cmd->add_option("name", show_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*seed_opt) common.seed = seed;
  if (*workers_opt) common.workers = workers;

  try {
    if (*spec_cmd) {
      if (*spec_t) spectrum.time = spectrum_t;
      nlpol::cmd_spectrum(common, spectrum, std::cout);
    } else if (*sim_cmd) {
      simulate.mode = sim_mode == "scan" ? nlpol::SimulateOptions::Mode::Scan
                                         : nlpol::SimulateOptions::Mode::Ensemble;
      if (*sim_t_opt) simulate.t_final = sim_t;
      nlpol::cmd_simulate(common, simulate, std::cout);
    } else if (*corr_cmd) {
      corr.mode = corr_mode == "analytic"    ? nlpol::CorrelationOptions::Mode::Analytic
                  : corr_mode == "simulated" ? nlpol::CorrelationOptions::Mode::Simulated
                                             : nlpol::CorrelationOptions::Mode::Both;
      if (*corr_t_opt) corr.time = corr_t;
      nlpol::cmd_correlations(common, corr, std::cout);
    } else if (*budget_cmd) {
      if (*scale_opt) budget.feature_scale = scale;
      nlpol::cmd_budget(common, budget, std::cout);
    } else if (*list_cmd) {
      nlpol::cmd_preset_list(std::cout);
    } else if (*show_cmd) {
      nlpol::cmd_preset_show(show_name, std::cout);
    }
  } catch (const nlpol::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const nlpol::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
