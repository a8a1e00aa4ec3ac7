#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "nlpol/bogoliubov.hpp"
#include "nlpol/grid.hpp"

namespace nlpol {

enum class Scheme { MeanField, FullThreeTerm };
enum class Composition { Lie, Strang };

// Sign s of the dispersion term +i s Delta_c C v^2 d^2/dz^2. Analytic (s = +1) gives plane waves
// omega = alpha delta_c + v k + delta_c C v^2 k^2, the dispersion the Bogoliubov analysis uses;
// AsPrinted (s = -1) flips it.
enum class DispersionSign { Analytic, AsPrinted };

// Circular: periodic convolution for delta_NL. FiniteWindow: linear convolution over the
// domain only (zero padding), for edge studies.
enum class ConvolutionMode { Circular, FiniteWindow };

struct SchemeConfig {
  Scheme scheme = Scheme::MeanField;
  double dt = 0.0;
  Composition composition = Composition::Strang;
  unsigned residual_substeps = 4;
  DispersionSign dispersion_sign = DispersionSign::Analytic;
  ConvolutionMode convolution = ConvolutionMode::Circular;
  double stability_guard = 0.1;
  bool enforce_guard = true;

  void validate() const;
};

struct FieldState {
  Grid grid;
  std::vector<std::complex<double>> psi;
  double time = 0.0;
};

FieldState cw_state(const Grid& grid, const CwBackground& cw, double alpha);

enum class SeedKind {
  BogoliubovPair,  // eigenmode of the linearized problem at +k (with its -k partner)
  Cosine,          // amplitude * cos(k z), both sidebands equal
  PlaneWave,       // amplitude * exp(i k z)
};

// Adds a small perturbation at grid wavenumber index k_index, phase-locked to the mean field.
// Returns false when amplitude >= 0.1 |psi0|, i.e. outside the Bogoliubov regime (the seed is
// still applied).
bool seed_mode(FieldState& state, std::size_t k_index, double amplitude, SeedKind kind,
               const Physics& phys);

// Adds independent complex Gaussian mode amplitudes with <|a_k|^2> = N_k for every k != 0
// (Nyquist bin excluded). Deterministic in rng_seed.
void seed_noise(FieldState& state, const NoiseSpectrum& noise, std::uint64_t rng_seed);

// Per-trajectory seed derived from (master seed, trajectory index).
std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index);

// integral |psi|^2 dz
double field_norm(const FieldState& state);

// a_k = (sqrt(L)/n) sum_j psi_j exp(-i k z_j), so that sum_k |a_k|^2 = integral |psi|^2.
std::vector<std::complex<double>> mode_amplitudes(const FieldState& state);
std::complex<double> mode_amplitude(const FieldState& state, std::size_t k_index);

class Propagator {
 public:
  using Observer = std::function<void(const FieldState&)>;

  Propagator(const Grid& grid, const Physics& phys, const SchemeConfig& config);
  ~Propagator();
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;

  const SchemeConfig& config() const noexcept;
  const Grid& grid() const noexcept;

  // dt * max |omega0 + 2 n_p U_k| over |k| <= k_band = max(2 q_tr, |k_R| + 5/l), capped at
  // the grid Nyquist wavenumber.
  double stability_number() const;
  double guard_band() const;

  // One step of length config().dt (or of length dt when given).
  void step(FieldState& state) const;
  void step(FieldState& state, double dt) const;

  // Steps until state.time == t_final. The observer runs at every time in sample_times that
  // lies in [start, t_final]; steps are shortened to land on them exactly.
  // Throws NumericalError when the field stops being finite or grows by more than 1e4 in norm.
  void propagate(FieldState& state, double t_final, const std::vector<double>& sample_times = {},
                 const Observer& observer = {}) const;

  // Nonlinear detuning delta_NL(z) = alpha int U(z - z') |psi(z')|^2 dz'.
  std::vector<double> nonlinear_detuning(const FieldState& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Binary checkpoint: "NLPCKPT1", u32 version (1), u32 reserved (0), u64 n, f64 length,
// f64 time, then n pairs (re, im) of f64. Little-endian throughout.
void write_checkpoint(std::ostream& out, const FieldState& state);
FieldState read_checkpoint(std::istream& in);
void write_checkpoint(const std::string& path, const FieldState& state);
FieldState read_checkpoint(const std::string& path);

}  // namespace nlpol
