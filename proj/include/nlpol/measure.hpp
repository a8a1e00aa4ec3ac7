#pragma once

#include <complex>
#include <vector>

#include "nlpol/propagator.hpp"

namespace nlpol {

struct OmegaOptions {
  // The record is multiplied by exp(+i reference t) before fitting and the reference is added
  // back, so only the residual frequency has to be resolved by the sampling.
  double reference_frequency = 0.0;
  // Required |omega - reference| * span / (2 pi).
  double min_cycles = 3.0;
  // rms phase (rad) or log-amplitude residual above which the record counts as beating.
  double monophase_tolerance = 0.05;
};

struct OmegaFit {
  std::complex<double> omega;  // Re: oscillation frequency, Im: growth rate, a ~ exp(-i omega t)
  double phase_residual = 0.0;
  double amplitude_residual = 0.0;
  bool monophase = true;
  std::vector<double> tones;  // two strongest frequencies when !monophase
};

// Fit a_k(t) ~ exp(-i omega t). Throws NumericalError when the record is shorter than
// min_cycles periods of the demodulated signal, has fewer than 8 samples, or vanishes.
OmegaFit measure_omega(const std::vector<double>& times,
                       const std::vector<std::complex<double>>& values,
                       const OmegaOptions& options = {});

// Per-state quantities the ensemble estimators need.
struct Observables {
  std::vector<double> occupation;       // |a_k|^2, FFT order
  std::vector<double> autocorrelation;  // (1/n) sum_j I_j I_{j+m}, m = 0..n-1
  double mean_intensity = 0.0;
};

Observables observe(const FieldState& state);

struct SpectrumEstimate {
  std::vector<double> k;      // ascending, k = 0 excluded
  std::vector<double> mean;   // ensemble mean of |a_k|^2
  std::vector<double> error;  // standard error of the mean (0 for a single member)
};

SpectrumEstimate estimate_nk(const std::vector<Observables>& members, const Grid& grid);

struct G2Estimate {
  std::vector<double> dz;
  std::vector<double> g2;
  std::vector<double> error;  // standard error from the spread over members
};

// g2(dz) = <I(z) I(z+dz)> / <I>^2, averaged over z and members. dz must be multiples of the
// grid spacing; needs at least two members.
G2Estimate estimate_g2(const std::vector<Observables>& members, const Grid& grid,
                       const std::vector<double>& dz);

SpectrumEstimate measure_nk(const std::vector<FieldState>& ensemble);
G2Estimate measure_g2(const std::vector<FieldState>& ensemble, const std::vector<double>& dz);

}  // namespace nlpol
