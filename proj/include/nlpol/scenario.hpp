#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlpol/decoherence.hpp"
#include "nlpol/propagator.hpp"

namespace nlpol {

// Everything a run needs, in the units and shape of the config file.
struct Scenario {
  std::string name;

  MediumParams medium;
  EitParams eit;

  // Exactly one of the two: single-atom coupling g [1/s] (tan^2 = n_a g^2 / Omega^2) or tan^2
  // theta directly.
  double coupling = 0.0;
  double tan2_theta = 0.0;

  KernelKind kernel = KernelKind::Grating;
  double range = 0.0;             // l [m]
  double laser_wavenumber = 0.0;  // k_L [1/m]
  double tilt = 0.0;              // theta_L [rad]
  double grating_period = 0.0;    // Lambda [m]
  double local_strength_factor = -1.0;  // contact kernel strength = factor * U_L

  double intensity = 0.0;            // I [W/m^2]
  double rabi2_per_intensity = 0.0;  // Omega_L^2 / I
  double laser_detuning = 0.0;       // delta_L [1/s]
  double eta = 0.0;
  double laser_gamma = 0.0;          // width entering R_fs [1/s]

  CwBackground cw;
  double noise_amplitude = 0.0;  // N_0
  double noise_cutoff = 0.0;     // 0: q_tr

  double kappa = 0.0;
  double upper_detuning = 0.0;

  std::size_t grid_points = 8192;
  double grid_length = 0.0;  // [m]

  SchemeConfig scheme;  // dt = 0: half of the stability guard

  double t_final = 0.0;                    // 0: L / v
  std::vector<double> observe_transits;    // observation times in units of L / v
  std::size_t ensemble = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  FeatureKind feature = FeatureKind::RotonDip;
};

struct Derived {
  PolaritonParams polariton;
  LiddiParams liddi;
  LiddiStrength laser;
  PotentialSpec potential;
  Physics physics;
  NoiseSpectrum noise;
  DecoherenceParams decoherence;
  double transit_time = 0.0;  // L / v
  double t_final = 0.0;
  std::vector<double> sample_times;
};

Derived derive(const Scenario& s);

// Grid and scheme with dt resolved (dt = 0 picks half the stability guard).
Grid scenario_grid(const Scenario& s);
SchemeConfig resolved_scheme(const Scenario& s, const Derived& d);

}  // namespace nlpol
