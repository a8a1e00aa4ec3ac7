#include "nlpol/potential.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlpol/error.hpp"
#include "nlpol/fft.hpp"

namespace nlpol {

using detail::require;
using detail::require_finite;

PotentialSpec PotentialSpec::grating(double strength, double range, double laser_wavenumber_z,
                                     double bragg_wavenumber) {
  PotentialSpec s;
  s.kind = KernelKind::Grating;
  s.strength = strength;
  s.range = range;
  s.laser_wavenumber_z = laser_wavenumber_z;
  s.bragg_wavenumber = bragg_wavenumber;
  s.validate();
  return s;
}

PotentialSpec PotentialSpec::local(double strength, double range) {
  PotentialSpec s;
  s.kind = KernelKind::LocalDelta;
  s.strength = strength;
  s.range = range;
  s.validate();
  return s;
}

double PotentialSpec::roton_wavenumber() const noexcept {
  if (kind == KernelKind::LocalDelta) return 0.0;
  return laser_wavenumber_z - bragg_wavenumber;
}

void PotentialSpec::validate() const {
  require_finite(strength, "potential.strength");
  require_finite(range, "potential.range");
  require(range > 0, "potential.range must be positive");
  if (kind == KernelKind::Grating) {
    require_finite(laser_wavenumber_z, "potential.laser_wavenumber_z");
    require_finite(bragg_wavenumber, "potential.bragg_wavenumber");
    require(laser_wavenumber_z >= 0 && bragg_wavenumber >= 0,
            "potential wavenumbers must be non-negative");
  }
}

double kernel_value(const PotentialSpec& spec, double z) {
  if (spec.kind == KernelKind::LocalDelta)
    throw std::domain_error("contact kernel has no pointwise value; use kernel_ft");
  const double az = std::abs(z);
  return -0.5 * spec.strength * std::cos(spec.laser_wavenumber_z * az) *
         std::cos(spec.bragg_wavenumber * az) * std::exp(-az / spec.range);
}

double kernel_ft(const PotentialSpec& spec, double k) {
  const double l = spec.range;
  if (spec.kind == KernelKind::LocalDelta) return spec.strength * l / 8.0;

  const double ka = std::abs(k);
  const double kr = spec.laser_wavenumber_z - spec.bragg_wavenumber;
  const double ks = spec.laser_wavenumber_z + spec.bragg_wavenumber;
  auto lorentz = [l](double x) { return 1.0 / (1.0 + l * l * x * x); };
  // Pair the terms so the result is symmetric in k bit for bit.
  const double sum = (lorentz(ka - kr) + lorentz(ka + kr)) + (lorentz(ka - ks) + lorentz(ka + ks));
  return -0.25 * spec.strength * l * sum;
}

PotentialSpec local_reference(const PotentialSpec& grating) {
  return PotentialSpec::local(-grating.strength, grating.range);
}

bool LiddiParams::far_detuned(double ratio) const noexcept {
  return std::abs(detuning) >= ratio * std::abs(rabi);
}

LiddiStrength liddi_strength(const LiddiParams& p) {
  require_finite(p.rabi, "liddi.rabi");
  require_finite(p.detuning, "liddi.detuning");
  require_finite(p.eta, "liddi.eta");
  require_finite(p.gamma, "liddi.gamma");
  require(p.detuning != 0.0, "liddi.detuning must be non-zero (resonant drive is outside the model)");
  require(p.eta > 0, "liddi.eta must be positive");
  require(p.gamma > 0, "liddi.gamma must be positive");
  LiddiStrength out;
  out.scattering_rate = p.gamma * p.rabi * p.rabi / (2.0 * p.detuning * p.detuning);
  out.strength = 2.0 * p.eta * out.scattering_rate;
  return out;
}

double rabi_from_intensity(double intensity, double rabi2_per_intensity) {
  require_finite(intensity, "intensity");
  require_finite(rabi2_per_intensity, "rabi2_per_intensity");
  require(intensity >= 0 && rabi2_per_intensity > 0, "intensity must be non-negative");
  return std::sqrt(rabi2_per_intensity * intensity);
}

double projected_wavenumber(double laser_wavenumber, double tilt) {
  return laser_wavenumber * std::cos(tilt);
}

double bragg_wavenumber(double grating_period) {
  require(grating_period > 0, "grating period must be positive");
  return std::numbers::pi / grating_period;
}

DiscreteKernel discretize_kernel(const PotentialSpec& spec, const Grid& grid, bool periodic) {
  spec.validate();
  require(grid.length() >= 6.0 * spec.range, "grid shorter than 6 interaction ranges");

  const std::size_t n = grid.size();
  const double dz = grid.spacing();
  const double length = grid.length();
  DiscreteKernel out;
  out.samples.assign(n, 0.0);

  if (spec.kind == KernelKind::LocalDelta) {
    out.samples[0] = spec.strength * spec.range / (8.0 * dz);
  } else {
    // Envelope band only: the pair of Lorentzians at +-k_R, i.e. -(U_L/4) cos(k_R z) e^{-|z|/l},
    // summed over periodic images until they are below round-off.
    const double kr = spec.roton_wavenumber();
    const double l = spec.range;
    const long images = periodic ? static_cast<long>(std::ceil(40.0 * l / length)) + 1 : 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long m = grid.mode_of_index(j);
      const double z = dz * static_cast<double>(m);
      double acc = 0.0;
      for (long p = -images; p <= images; ++p) {
        const double zp = std::abs(z + static_cast<double>(p) * length);
        acc += std::cos(kr * zp) * std::exp(-zp / l);
      }
      out.samples[j] = -0.25 * spec.strength * acc;
    }
  }

  std::vector<std::complex<double>> buf(n);
  for (std::size_t j = 0; j < n; ++j) buf[j] = out.samples[j];
  FftPlan plan(n);
  plan.forward(buf, buf);
  out.spectrum.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.spectrum[i] = dz * buf[i].real();
  return out;
}

}  // namespace nlpol
