#include "nlpol/scenario.hpp"

#include <cmath>

#include "nlpol/error.hpp"

namespace nlpol {

Derived derive(const Scenario& s) {
  s.medium.validate();
  s.eit.validate();
  detail::require((s.coupling > 0) != (s.tan2_theta > 0),
                  "give exactly one of polariton.coupling and polariton.tan2_theta");

  Derived d;
  const double tan2 = s.coupling > 0 ? tan2_theta_from_coupling(s.medium.atom_density, s.coupling, s.eit.rabi)
                                     : s.tan2_theta;
  d.polariton = polariton_params(s.medium, s.eit, tan2);

  d.liddi.rabi = rabi_from_intensity(s.intensity, s.rabi2_per_intensity);
  d.liddi.detuning = s.laser_detuning;
  d.liddi.eta = s.eta;
  d.liddi.gamma = s.laser_gamma;
  d.liddi.laser_wavenumber = s.laser_wavenumber;
  d.liddi.tilt = s.tilt;
  d.laser = liddi_strength(d.liddi);

  if (s.kernel == KernelKind::Grating) {
    d.potential = PotentialSpec::grating(d.laser.strength, s.range,
                                         projected_wavenumber(s.laser_wavenumber, s.tilt),
                                         bragg_wavenumber(s.grating_period));
  } else {
    d.potential = PotentialSpec::local(s.local_strength_factor * d.laser.strength, s.range);
  }

  s.cw.validate();
  d.physics.polariton = d.polariton;
  d.physics.potential = d.potential;
  d.physics.cw = s.cw;
  d.physics.coupling_detuning = s.eit.coupling_detuning;
  d.physics.validate();

  d.noise.amplitude = s.noise_amplitude;
  d.noise.cutoff = s.noise_cutoff > 0 ? s.noise_cutoff : d.polariton.transparency_wavenumber;
  d.noise.validate();

  d.decoherence.kappa = s.kappa;
  d.decoherence.upper_detuning = s.upper_detuning;
  d.decoherence.medium = s.medium;
  d.decoherence.eit = s.eit;
  d.decoherence.polariton = d.polariton;
  d.decoherence.potential = d.potential;
  d.decoherence.liddi = d.liddi;
  d.decoherence.cw = s.cw;

  d.transit_time = s.medium.length / d.polariton.group_velocity;
  detail::require(s.t_final >= 0, "run.t_final must be non-negative");
  d.t_final = s.t_final > 0 ? s.t_final : d.transit_time;
  for (double f : s.observe_transits) {
    detail::require(f >= 0, "run.observe_transits must be non-negative");
    d.sample_times.push_back(f * d.transit_time);
  }
  return d;
}

Grid scenario_grid(const Scenario& s) { return Grid(s.grid_points, s.grid_length); }

SchemeConfig resolved_scheme(const Scenario& s, const Derived& d) {
  SchemeConfig c = s.scheme;
  if (c.dt > 0) return c;
  SchemeConfig probe = c;
  probe.dt = 1.0;
  probe.enforce_guard = false;
  const double rate = Propagator(scenario_grid(s), d.physics, probe).stability_number();
  c.dt = rate > 0 ? 0.5 * c.stability_guard / rate : d.t_final / 1000.0;
  // Land on the final time with whole steps.
  if (d.t_final > 0) {
    const double steps = std::ceil(d.t_final / c.dt);
    c.dt = d.t_final / steps;
  }
  return c;
}

}  // namespace nlpol
