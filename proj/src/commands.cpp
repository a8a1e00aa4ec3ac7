#include "nlpol/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <limits>
#include <ostream>

#include "nlpol/analysis.hpp"
#include "nlpol/csv.hpp"
#include "nlpol/ensemble.hpp"
#include "nlpol/error.hpp"
#include "nlpol/manifest.hpp"

namespace nlpol {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RunManifest start_manifest(const std::string& command, const CommonOptions& common,
                           const Scenario& s) {
  RunManifest m;
  m.command = command;
  m.preset = common.preset;
  m.config_path = common.config_path;
  m.overrides = common.overrides;
  m.seed = s.seed;
  m.started = utc_timestamp();
  m.arguments = common.arguments;
  m.resolved_config = serialize_scenario(s);
  return m;
}

void finish_manifest(RunManifest& m, const std::vector<std::string>& outputs) {
  m.outputs = outputs;
  m.finished = utc_timestamp();
  write_manifests(m);
}

double default_k_max(const Derived& d) {
  return std::max(2.0 * d.polariton.transparency_wavenumber,
                  std::abs(d.potential.roton_wavenumber()) + 20.0 / d.potential.range);
}

}  // namespace

Scenario resolve_scenario(const CommonOptions& common) {
  std::vector<std::string> overrides = common.overrides;
  if (common.seed) overrides.push_back("run.seed=" + std::to_string(*common.seed));
  if (common.workers) overrides.push_back("run.workers=" + std::to_string(*common.workers));
  if (!common.scheme.empty()) overrides.push_back("scheme.kind=" + common.scheme);
  if (common.preset.empty() == common.config_path.empty())
    throw ConfigError("give exactly one of --preset and --config");
  return common.preset.empty() ? load_scenario_file(common.config_path, overrides)
                               : load_preset(common.preset, overrides);
}

std::string output_directory(const CommonOptions& common) {
  std::string dir = common.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("NLPOL_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

std::vector<std::string> cmd_spectrum(const CommonOptions& common, const SpectrumOptions& options,
                                      std::ostream& log) {
  const Scenario s = resolve_scenario(common);
  const Derived d = derive(s);
  RunManifest manifest = start_manifest("spectrum", common, s);
  detail::require(options.k_count >= 1, "--k-count must be at least 1");
  const double k_max = options.k_max > 0 ? options.k_max : default_k_max(d);
  detail::require(options.k_min >= 0 && (options.k_count == 1 || k_max > options.k_min),
                  "need 0 <= k-min < k-max");
  const double t = options.time.value_or(d.transit_time);
  const Physics& phys = d.physics;
  const Physics local = with_local_kernel(phys);
  const NoiseSpectrum& noise = d.noise;

  const std::string path = (fs::path(output_directory(common)) / "spectrum.csv").string();
  CsvWriter csv(path, {"k [1/m]", "omega0 [1/s]", "omega_re [1/s]", "omega_im [1/s]", "u_k [m/s]",
                       "squeezing []", "n_k_classical []", "n_k_quantum []",
                       "omega_local_re [1/s]", "omega_local_im [1/s]"});
  for (double k : linspace(options.k_min, k_max, options.k_count)) {
    const auto w = spectrum(k, phys);
    const auto wl = spectrum(k, local);
    csv.row({k, omega0(k, phys), w.real(), w.imag(), kernel_ft(phys.potential, k),
             squeezing_spectrum(k, t, phys), mode_occupation(k, t, noise, Statistics::Classical, phys),
             mode_occupation(k, t, noise, Statistics::Quantum, phys), wl.real(), wl.imag()});
  }
  csv.close();

  log << "spectrum: " << s.name << ", v = " << d.polariton.group_velocity
      << " m/s, q_tr = " << d.polariton.transparency_wavenumber
      << " 1/m, k_R = " << d.potential.roton_wavenumber() << " 1/m\n";
  if (options.k_count > 2) {
    const double lo = std::max(options.k_min, 1e-6 * k_max);
    const auto g = growth_peak(phys, lo, k_max);
    if (g.value > 0) log << "  growth peak " << g.value << " 1/s at k = " << g.k << " 1/m\n";
    if (phys.potential.kind == KernelKind::Grating) {
      const auto dip = roton_dip(phys, lo, k_max);
      if (std::isfinite(dip.k))
        log << "  omega_k - omega_k(local) minimum " << dip.value << " 1/s at k = " << dip.k << " 1/m\n";
      const auto peak = spectrum_peak(phys, lo, k_max);
      if (std::isfinite(peak.k)) log << "  local maximum " << peak.value << " 1/s at k = " << peak.k << " 1/m\n";
    }
  }
  finish_manifest(manifest, {path});
  return {path};
}

std::vector<std::string> cmd_simulate(const CommonOptions& common, const SimulateOptions& options,
                                      std::ostream& log) {
  const Scenario s = resolve_scenario(common);
  const Derived d = derive(s);
  RunManifest manifest = start_manifest("simulate", common, s);
  const std::string dir = output_directory(common);
  std::vector<std::string> outputs;

  if (options.mode == SimulateOptions::Mode::Scan) {
    const double q = d.polariton.transparency_wavenumber;
    const double k_lo = options.k_min > 0 ? options.k_min : 0.3 * q;
    const double k_hi = options.k_max > 0 ? options.k_max : q;
    ModeScanOptions scan;
    scan.points = s.grid_points;
    scan.min_length = s.grid_length;
    scan.medium_length = s.medium.length;
    scan.scheme = s.scheme.scheme;
    const std::string path = (fs::path(dir) / "omega_scan.csv").string();
    CsvWriter csv(path, {"k [1/m]", "omega_measured [1/s]", "growth_measured [1/s]",
                         "omega_analytic [1/s]", "bogoliubov_measured [1/s]",
                         "bogoliubov_analytic [1/s]", "relative_error []", "monophase []",
                         "domain [m]", "dt [s]"});
    for (double k : linspace(k_lo, k_hi, options.k_count)) {
      if (growth_rate(k, d.physics) > 0) {
        log << "  skip k = " << k << " 1/m (unstable)\n";
        continue;
      }
      ModeScanPoint p;
      try {
        p = simulate_mode(d.physics, k, scan);
      } catch (const std::domain_error&) {
        log << "  skip k = " << k << " 1/m (unstable on the simulation grid)\n";
        continue;
      }
      csv.row({p.k, p.measured.real(), p.measured.imag(), p.analytic, p.bogoliubov_measured,
               p.bogoliubov_analytic, p.relative_error, p.monophase ? 1.0 : 0.0, p.domain, p.dt});
      log << "  k = " << p.k << " 1/m: omega_k measured " << p.bogoliubov_measured << ", analytic "
          << p.bogoliubov_analytic << " (rel. error " << p.relative_error << ")\n";
    }
    csv.close();
    outputs.push_back(path);
    finish_manifest(manifest, outputs);
    return outputs;
  }

  const double t_final = options.t_final.value_or(d.t_final);
  detail::require(t_final >= 0, "--t-final must be non-negative");
  std::vector<double> samples;
  for (double t : d.sample_times)
    if (t <= t_final) samples.push_back(t);
  const Grid grid = scenario_grid(s);
  const SchemeConfig scheme = resolved_scheme(s, d);
  EnsembleConfig ec;
  ec.members = s.ensemble;
  ec.master_seed = s.seed;
  ec.workers = s.workers;
  log << "simulate: " << s.name << ", " << s.ensemble << " members, dt = " << scheme.dt
      << " s, t_final = " << t_final << " s (" << t_final / d.transit_time << " L/v)\n";
  const EnsembleResult r = run_ensemble(grid, d.physics, scheme, d.noise, t_final, samples, ec);

  const std::string nk_path = (fs::path(dir) / "nk.csv").string();
  CsvWriter csv(nk_path, {"t [s]", "k [1/m]", "n_k_sim []", "n_k_err []", "n_k_theory []",
                          "ensemble_id"});
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const SpectrumEstimate e = estimate_nk(r.snapshots[i], grid);
    std::size_t best = 0;
    for (std::size_t j = 0; j < e.k.size(); ++j) {
      csv.row({r.times[i], e.k[j], e.mean[j], e.error[j],
               mode_occupation(e.k[j], r.times[i], d.noise, Statistics::Classical, d.physics),
               static_cast<double>(s.seed)});
      if (e.mean[j] > e.mean[best]) best = j;
    }
    log << "  t = " << r.times[i] << " s: N_k maximum " << e.mean[best] << " at k = " << e.k[best]
        << " 1/m\n";
  }
  csv.close();
  outputs.push_back(nk_path);
  if (r.first_member_final) {
    const std::string ck = (fs::path(dir) / "checkpoint.bin").string();
    write_checkpoint(ck, *r.first_member_final);
    outputs.push_back(ck);
  }
  double worst = 0.0;
  for (double x : r.final_norm_drift) worst = std::max(worst, x);
  log << "  largest relative norm drift " << worst << "\n";
  finish_manifest(manifest, outputs);
  return outputs;
}

std::vector<std::string> cmd_correlations(const CommonOptions& common,
                                          const CorrelationOptions& options, std::ostream& log) {
  const Scenario s = resolve_scenario(common);
  const Derived d = derive(s);
  RunManifest manifest = start_manifest("correlations", common, s);
  const double t = options.time.value_or(d.t_final);
  const Grid grid = scenario_grid(s);
  const double h = grid.spacing();
  const double dz_max = options.dz_max > 0 ? options.dz_max : 6.0 * d.potential.range;
  const auto max_lag = static_cast<std::size_t>(std::floor(dz_max / h + 1e-9));
  detail::require(max_lag < grid.size() / 2, "dz range exceeds half the simulation box");
  std::size_t stride = 1;
  if (options.dz_count > 1) stride = std::max<std::size_t>(1, max_lag / (options.dz_count - 1));
  std::vector<double> dz;
  for (std::size_t m = 0; m <= max_lag; m += stride) dz.push_back(static_cast<double>(m) * h);

  const bool analytic = options.mode != CorrelationOptions::Mode::Simulated;
  const bool simulated = options.mode != CorrelationOptions::Mode::Analytic;
  std::vector<double> theory(dz.size(), kNaN), sim(dz.size(), kNaN), err(dz.size(), kNaN);
  if (analytic) {
    for (std::size_t i = 0; i < dz.size(); ++i)
      theory[i] = g2(dz[i], t, d.noise, Statistics::Classical, d.physics).value;
  }
  if (simulated) {
    const SchemeConfig scheme = resolved_scheme(s, d);
    EnsembleConfig ec;
    ec.members = s.ensemble;
    ec.master_seed = s.seed;
    ec.workers = s.workers;
    const EnsembleResult r = run_ensemble(grid, d.physics, scheme, d.noise, t, {}, ec);
    const G2Estimate e = estimate_g2(r.snapshots.back(), grid, dz);
    sim = e.g2;
    err = e.error;
  }
  const std::string path = (fs::path(output_directory(common)) / "g2.csv").string();
  CsvWriter csv(path, {"dz [m]", "g2_theory []", "g2_sim []", "sim_err []"});
  for (std::size_t i = 0; i < dz.size(); ++i) csv.row({dz[i], theory[i], sim[i], err[i]});
  csv.close();
  log << "correlations: " << s.name << " at t = " << t << " s, " << dz.size() << " separations\n";
  finish_manifest(manifest, {path});
  return {path};
}

namespace {

nlohmann::ordered_json budget_json(const Budget& b) {
  nlohmann::ordered_json j;
  j["feature_scale"] = b.feature_scale;
  j["rates"] = nlohmann::ordered_json::array();
  for (const auto& e : b.entries)
    j["rates"].push_back({{"name", e.name}, {"rate", e.rate}, {"ratio", e.ratio},
                          {"verdict", e.obscures ? "obscures feature" : "below feature"}});
  return j;
}

void print_budget(const Budget& b, std::ostream& log) {
  log << "  feature scale " << format_number(b.feature_scale) << " 1/s\n";
  log << "  " << std::left << std::setw(8) << "rate" << std::right << std::setw(20) << "value [1/s]"
      << std::setw(20) << "ratio" << "  verdict\n";
  for (const auto& e : b.entries)
    log << "  " << std::left << std::setw(8) << e.name << std::right << std::setw(20)
        << format_number(e.rate) << std::setw(20) << format_number(e.ratio) << "  "
        << (e.obscures ? "obscures feature" : "below feature") << "\n";
}

}  // namespace

std::vector<std::string> cmd_budget(const CommonOptions& common, const BudgetOptions& options,
                                    std::ostream& log) {
  const Scenario s = resolve_scenario(common);
  const Derived d = derive(s);
  RunManifest manifest = start_manifest("budget", common, s);
  double scale = 0.0;
  if (options.feature_scale) {
    scale = *options.feature_scale;
  } else {
    scale = feature_scale(s.feature, d.physics).value;
  }
  const Budget b = budget(d.decoherence, scale);
  log << "budget: " << s.name << "\n";
  print_budget(b, log);

  nlohmann::ordered_json j;
  j["scenario"] = s.name;
  j["budget"] = budget_json(b);
  j["rescues"] = nlohmann::ordered_json::array();
  for (const auto& spec : options.rescues) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("rescue '" + spec + "' is not knob:factor");
    const std::string knob_name = spec.substr(0, colon);
    RescueKnob knob;
    if (knob_name == "omega")
      knob = RescueKnob::OmegaFactor;
    else if (knob_name == "density")
      knob = RescueKnob::DensityDetuningFactor;
    else
      throw ConfigError("unknown rescue knob '" + knob_name + "' (omega or density)");
    double factor = 0.0;
    try {
      factor = std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("rescue factor in '" + spec + "' is not a number");
    }
    const RescueReport r = rescue_scan(d.decoherence, knob, factor, s.feature);
    log << "rescue " << spec << ": feature " << format_number(r.feature_before.value) << " -> "
        << format_number(r.feature_after.value) << " 1/s (k = " << format_number(r.feature_after.k)
        << " 1/m), delta_tr " << format_number(r.window_before) << " -> "
        << format_number(r.window_after) << " 1/s\n";
    if (r.window_warning) log << "  warning: transit rate no longer well inside the transparency window\n";
    print_budget(r.after, log);
    j["rescues"].push_back({{"knob", knob_name},
                            {"factor", factor},
                            {"feature_before", r.feature_before.value},
                            {"feature_after", r.feature_after.value},
                            {"window_warning", r.window_warning},
                            {"before", budget_json(r.before)},
                            {"after", budget_json(r.after)}});
  }
  const std::string path = (fs::path(output_directory(common)) / "budget.json").string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
  out.close();
  if (!out) throw IoError("failed writing " + path);
  finish_manifest(manifest, {path});
  return {path};
}

void cmd_preset_list(std::ostream& out) {
  for (const auto& name : preset_names()) out << name << "\n";
}

void cmd_preset_show(const std::string& name, std::ostream& out) { out << preset_text(name); }

}  // namespace nlpol
