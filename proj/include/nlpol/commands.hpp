#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlpol/config.hpp"

namespace nlpol {

struct CommonOptions {
  std::string preset;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;  // empty: $NLPOL_OUT_DIR, else "."
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string scheme;  // empty, "mean-field" or "full-three-term"
  std::vector<std::string> arguments;
};

// Loads the preset or config file and applies overrides and the seed/workers/scheme flags.
Scenario resolve_scenario(const CommonOptions& common);
std::string output_directory(const CommonOptions& common);

struct SpectrumOptions {
  double k_min = 0.0;
  double k_max = 0.0;  // 0: max(2 q_tr, k_R + 20/l)
  std::size_t k_count = 501;
  std::optional<double> time;  // for G_k and N_k; default L/v
};

struct SimulateOptions {
  enum class Mode { Ensemble, Scan } mode = Mode::Ensemble;
  std::optional<double> t_final;
  // scan mode
  double k_min = 0.0;
  double k_max = 0.0;
  std::size_t k_count = 24;
};

struct CorrelationOptions {
  enum class Mode { Analytic, Simulated, Both } mode = Mode::Both;
  std::optional<double> time;
  double dz_max = 0.0;  // 0: 6 l
  std::size_t dz_count = 0;  // 0: every grid spacing up to dz_max
};

struct BudgetOptions {
  std::vector<std::string> rescues;  // "omega:12", "density:0.1"
  std::optional<double> feature_scale;
};

// Each command writes its files into the output directory, a manifest beside each, and a short
// human-readable summary to log. Return the written paths.
std::vector<std::string> cmd_spectrum(const CommonOptions& common, const SpectrumOptions& options,
                                      std::ostream& log);
std::vector<std::string> cmd_simulate(const CommonOptions& common, const SimulateOptions& options,
                                      std::ostream& log);
std::vector<std::string> cmd_correlations(const CommonOptions& common,
                                          const CorrelationOptions& options, std::ostream& log);
std::vector<std::string> cmd_budget(const CommonOptions& common, const BudgetOptions& options,
                                    std::ostream& log);
void cmd_preset_list(std::ostream& out);
void cmd_preset_show(const std::string& name, std::ostream& out);

}  // namespace nlpol
