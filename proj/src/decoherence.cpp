#include "nlpol/decoherence.hpp"

#include <algorithm>
#include <cmath>

#include "nlpol/error.hpp"

namespace nlpol {

using detail::require;

Physics DecoherenceParams::physics() const {
  Physics phys;
  phys.polariton = polariton;
  phys.potential = potential;
  phys.cw = cw;
  phys.coupling_detuning = eit.coupling_detuning;
  return phys;
}

void DecoherenceParams::validate() const {
  detail::require_finite(kappa, "decoherence.kappa");
  detail::require_finite(upper_detuning, "decoherence.upper_detuning");
  require(kappa >= 0, "decoherence.kappa must be non-negative");
  require(upper_detuning > 0, "decoherence.upper_detuning must be positive");
  medium.validate();
  eit.validate();
  potential.validate();
  cw.validate();
}

Budget budget(const DecoherenceParams& p, double feature_scale) {
  p.validate();
  detail::require_finite(feature_scale, "feature_scale");
  require(feature_scale > 0, "feature_scale must be positive");
  const Physics phys = p.physics();
  const double alpha = phys.alpha();
  const double u0 = phys.interaction_u0();
  const double loss = p.kappa / p.upper_detuning;

  Budget b;
  b.r_fs = liddi_strength(p.liddi).scattering_rate;
  b.r_eit = eit_loss_rate(0.0, p.eit.coupling_detuning + phys.mean_nonlinear_detuning(), p.medium,
                          p.eit, p.polariton.group_velocity);
  b.r_im1 = 0.25 * std::abs(p.potential.strength) * loss;
  b.r_im2 = 0.5 * loss * p.cw.photon_density * std::abs(u0);
  b.r_prop = p.kappa * (1.0 - alpha);
  b.feature_scale = feature_scale;
  const std::pair<const char*, double> rates[] = {
      {"R_fs", b.r_fs}, {"R_EIT", b.r_eit}, {"R_im1", b.r_im1}, {"R_im2", b.r_im2}, {"R_prop", b.r_prop}};
  for (const auto& [name, rate] : rates) {
    const double ratio = rate / feature_scale;
    b.entries.push_back({name, rate, ratio, ratio >= 1.0});
  }
  return b;
}

Feature feature_scale(FeatureKind kind, const Physics& phys) {
  const double kr = std::abs(phys.potential.roton_wavenumber());
  const double k_hi = std::max(2.0 * phys.polariton.transparency_wavenumber,
                               kr + 20.0 / phys.potential.range);
  const double k_lo = k_hi * 1e-4;
  Feature f;
  switch (kind) {
    case FeatureKind::RotonDip:
      f = roton_dip(phys, k_lo, k_hi, 8001);
      f.value = std::abs(f.value);
      break;
    case FeatureKind::SpectrumPeak:
      f = spectrum_peak(phys, k_lo, k_hi, 8001);
      break;
    case FeatureKind::GrowthPeak:
      f = growth_peak(phys, k_lo, k_hi, 8001);
      break;
  }
  if (!std::isfinite(f.value) || f.value <= 0)
    throw NumericalError("requested spectral feature does not exist for these parameters");
  return f;
}

DecoherenceParams rescale(const DecoherenceParams& p, RescueKnob knob, double factor) {
  detail::require_finite(factor, "rescue factor");
  require(factor > 0, "rescue factor must be positive");
  DecoherenceParams q = p;
  if (knob == RescueKnob::OmegaFactor) {
    q.eit.rabi *= factor;
    q.polariton = polariton_params(q.medium, q.eit, p.polariton.tan2_theta / (factor * factor));
  } else {
    q.cw.photon_density *= factor;
    q.eit.coupling_detuning *= factor;
  }
  return q;
}

RescueReport rescue_scan(const DecoherenceParams& p, RescueKnob knob, double factor,
                         FeatureKind feature) {
  const DecoherenceParams q = rescale(p, knob, factor);
  RescueReport r;
  r.knob = knob;
  r.factor = factor;
  r.feature_before = feature_scale(feature, p.physics());
  r.feature_after = feature_scale(feature, q.physics());
  r.before = budget(p, r.feature_before.value);
  r.after = budget(q, r.feature_after.value);
  r.window_before = p.polariton.transparency_window;
  r.window_after = q.polariton.transparency_window;
  const double inverse_transit = q.polariton.group_velocity / q.medium.length;
  r.window_warning = !(10.0 * inverse_transit <= r.window_after);
  return r;
}

double ComplexKernel::real_part(double z) const { return kernel_value(spec, z); }

double ComplexKernel::imag_part(double z) const { return ratio * kernel_value(spec, z); }

ComplexKernel complex_kernel(const PotentialSpec& spec, const DecoherenceParams& p) {
  require(spec.kind == KernelKind::Grating, "complex kernel needs the grating kernel");
  require(p.upper_detuning > 0, "decoherence.upper_detuning must be positive");
  require(p.kappa >= 0, "decoherence.kappa must be non-negative");
  return {spec, p.kappa / (2.0 * p.upper_detuning)};
}

}  // namespace nlpol
