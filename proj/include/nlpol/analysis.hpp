#pragma once

#include <complex>
#include <vector>

#include "nlpol/bogoliubov.hpp"
#include "nlpol/propagator.hpp"

namespace nlpol {

struct SpectrumRow {
  double k = 0.0;
  double omega0 = 0.0;
  std::complex<double> omega;
  double u_k = 0.0;
};

std::vector<SpectrumRow> spectrum_table(const Physics& phys, const std::vector<double>& ks);

// k_count points evenly spaced on [k_min, k_max] (a single point at k_min when k_count == 1).
std::vector<double> linspace(double lo, double hi, std::size_t count);

struct Feature {
  double k = 0.0;
  double value = 0.0;
};

// Same physics with the contact kernel of equal weight in place of the grating.
Physics with_local_kernel(const Physics& phys);

// Minimum of omega_k - omega_k(local) over the stable part of [k_lo, k_hi]: the roton dip and
// its depth (negative value).
Feature roton_dip(const Physics& phys, double k_lo, double k_hi, std::size_t samples = 4001);

// Largest interior local maximum of Re omega_k on [k_lo, k_hi]; value NaN when none exists.
Feature spectrum_peak(const Physics& phys, double k_lo, double k_hi, std::size_t samples = 4001);

// Largest Im omega_k on [k_lo, k_hi] (value 0 when the band is stable).
Feature growth_peak(const Physics& phys, double k_lo, double k_hi, std::size_t samples = 4001);

// All interior local minima of Re omega_k over the stable band.
std::vector<Feature> spectrum_minima(const Physics& phys, double k_lo, double k_hi,
                                     std::size_t samples = 4001);

struct ModeScanOptions {
  std::size_t points = 8192;
  double min_length = 0.0;          // 0: 10 l
  double duration = 0.0;            // 0: max(10 L/v, bogoliubov_periods * 2 pi / omega_k)
  double bogoliubov_periods = 3.5;
  double medium_length = 0.0;       // L, for the default duration
  double amplitude_fraction = 1e-3; // seed amplitude / |psi0|
  double guard_fraction = 0.5;      // dt chosen so the stability number is guard * this
  double min_cycles = 3.0;
  std::size_t samples = 400;
  Scheme scheme = Scheme::MeanField;
};

struct ModeScanPoint {
  double k = 0.0;  // on-grid wavenumber actually simulated
  double domain = 0.0;
  double dt = 0.0;
  std::complex<double> measured;  // full lab-frame omega(k)
  double analytic = 0.0;          // full_dispersion(k)
  double bogoliubov_measured = 0.0;  // measured - (alpha delta_c + n_p U_0 + v k)
  double bogoliubov_analytic = 0.0;  // s omega_k
  double relative_error = 0.0;       // on the Bogoliubov part
  bool monophase = true;
};

// Seeds the Bogoliubov eigenmode at (the on-grid wavenumber nearest) k on a domain of
// m 2 pi / k >= min_length, propagates, and fits the frequency of a_k(t).
ModeScanPoint simulate_mode(const Physics& phys, double k, const ModeScanOptions& options);

}  // namespace nlpol
