#include "nlpol/medium.hpp"

#include <cmath>

#include "nlpol/error.hpp"

namespace nlpol {

using detail::require;
using detail::require_finite;

double MediumParams::optical_depth() const {
  return atom_density / mode_area * length * cross_section;
}

void MediumParams::validate() const {
  require_finite(atom_density, "medium.atom_density");
  require_finite(mode_area, "medium.mode_area");
  require_finite(length, "medium.length");
  require_finite(cross_section, "medium.cross_section");
  require_finite(gamma, "medium.gamma");
  require_finite(light_speed, "medium.light_speed");
  require_finite(probe_wavenumber, "medium.probe_wavenumber");
  require(atom_density > 0 && mode_area > 0 && length > 0 && cross_section > 0 && gamma > 0 &&
              light_speed > 0 && probe_wavenumber > 0,
          "medium parameters must be strictly positive");
}

void EitParams::validate() const {
  require_finite(rabi, "eit.rabi");
  require_finite(coupling_detuning, "eit.coupling_detuning");
  require(rabi > 0, "eit.rabi must be positive");
}

double tan2_theta_from_coupling(double atom_density, double coupling, double rabi) {
  require_finite(atom_density, "atom_density");
  require_finite(coupling, "coupling");
  require_finite(rabi, "rabi");
  require(atom_density >= 0, "atom_density must be non-negative");
  require(rabi > 0, "rabi must be positive");
  return atom_density * coupling * coupling / (rabi * rabi);
}

double transparency_window(double rabi, double gamma, double optical_depth) {
  require_finite(rabi, "rabi");
  require_finite(gamma, "gamma");
  require_finite(optical_depth, "optical_depth");
  require(optical_depth > 0, "optical depth must be positive");
  require(rabi > 0 && gamma > 0, "rabi and gamma must be positive");
  return rabi * rabi / (gamma * std::sqrt(optical_depth));
}

PolaritonParams polariton_params(const MediumParams& medium, const EitParams& eit,
                                 double tan2_theta) {
  medium.validate();
  eit.validate();
  require_finite(tan2_theta, "tan2_theta");
  require(tan2_theta >= 0, "tan2_theta must be non-negative");

  PolaritonParams p;
  p.tan2_theta = tan2_theta;
  p.sin2_theta = tan2_theta / (1.0 + tan2_theta);
  p.group_velocity = medium.light_speed / (1.0 + tan2_theta);
  p.dispersion = p.sin2_theta * (2.0 - 3.0 * p.sin2_theta) / (eit.rabi * eit.rabi);
  p.optical_depth = medium.optical_depth();
  p.transparency_window = transparency_window(eit.rabi, medium.gamma, p.optical_depth);
  p.transparency_wavenumber = p.transparency_window / p.group_velocity;
  return p;
}

double eit_loss_rate(double probe_detuning, double coupling_detuning_total,
                     const MediumParams& medium, const EitParams& eit, double group_velocity) {
  require_finite(probe_detuning, "probe_detuning");
  require_finite(coupling_detuning_total, "coupling_detuning_total");
  require_finite(group_velocity, "group_velocity");
  eit.validate();

  const double two_photon = probe_detuning - coupling_detuning_total;
  const double g2 = medium.gamma * medium.gamma;
  const double dressed = eit.rabi * eit.rabi - 4.0 * probe_detuning * two_photon;
  const double numerator = 2.0 * two_photon * two_photon * g2;
  const double denominator = 4.0 * g2 * two_photon * two_photon + dressed * dressed;
  if (numerator == 0.0) return 0.0;
  return group_velocity * medium.optical_depth() / medium.length * numerator / denominator;
}

}  // namespace nlpol
