#pragma once

#include <string>
#include <vector>

#include "nlpol/analysis.hpp"
#include "nlpol/bogoliubov.hpp"
#include "nlpol/medium.hpp"
#include "nlpol/potential.hpp"

namespace nlpol {

struct DecoherenceParams {
  double kappa = 0.0;           // guided-mode width [1/s]
  double upper_detuning = 0.0;  // delta_u = omega_u - omega_L [1/s]

  MediumParams medium;
  EitParams eit;
  PolaritonParams polariton;
  PotentialSpec potential;
  LiddiParams liddi;
  CwBackground cw;

  Physics physics() const;
  void validate() const;
};

struct RateEntry {
  std::string name;
  double rate = 0.0;   // [1/s]
  double ratio = 0.0;  // rate / feature_scale
  bool obscures = false;
};

struct Budget {
  double r_fs = 0.0;
  double r_eit = 0.0;
  double r_im1 = 0.0;
  double r_im2 = 0.0;
  double r_prop = 0.0;
  double feature_scale = 0.0;
  std::vector<RateEntry> entries;  // the five rates in the order above
};

Budget budget(const DecoherenceParams& p, double feature_scale);

enum class FeatureKind { RotonDip, SpectrumPeak, GrowthPeak };

// Spectral resolution a rate is compared to: |dip depth|, peak value, or peak growth rate,
// searched over 0 < k <= max(2 q_tr, k_R + 20/l).
Feature feature_scale(FeatureKind kind, const Physics& phys);

enum class RescueKnob { OmegaFactor, DensityDetuningFactor };

struct RescueReport {
  RescueKnob knob = RescueKnob::OmegaFactor;
  double factor = 1.0;
  Feature feature_before, feature_after;
  Budget before, after;
  double window_before = 0.0, window_after = 0.0;  // delta_tr
  // T^-1 << delta_tr no longer holds for the transit time T = L/v after rescaling.
  bool window_warning = false;
};

// Omega -> f Omega (re-deriving alpha, v, C, delta_tr at fixed n_a g^2) or
// (n_p, delta_c) -> f (n_p, delta_c).
RescueReport rescue_scan(const DecoherenceParams& p, RescueKnob knob, double factor,
                         FeatureKind feature);

DecoherenceParams rescale(const DecoherenceParams& p, RescueKnob knob, double factor);

// Lowest order in kappa of the lossy kernel: U'(z) = U(z), U''(z) = kappa / (2 delta_u) U(z).
struct ComplexKernel {
  PotentialSpec spec;
  double ratio = 0.0;  // U''/U'

  double real_part(double z) const;
  double imag_part(double z) const;
};

ComplexKernel complex_kernel(const PotentialSpec& spec, const DecoherenceParams& p);

}  // namespace nlpol
