#pragma once

// Atomic medium, EIT drive and the propagation coefficients they imply.
//
// All rates are angular frequencies in 1/s; lengths in m.

namespace nlpol {

struct MediumParams {
  double atom_density = 0.0;      // n_a [1/m], linear density along the waveguide
  double mode_area = 0.0;         // A [m^2], effective area of the guided mode at the atoms
  double length = 0.0;            // L [m]
  double cross_section = 0.0;     // sigma_a [m^2] of |g> -> |e>
  double gamma = 0.0;             // width of |e> [1/s]
  double light_speed = 2.99792458e8;
  double probe_wavenumber = 0.0;  // k_0 [1/m]

  // OD = (n_a / A) L sigma_a
  double optical_depth() const;
  void validate() const;
};

struct EitParams {
  double rabi = 0.0;               // Omega [1/s]
  double coupling_detuning = 0.0;  // delta_c [1/s], signed

  void validate() const;
};

struct PolaritonParams {
  double tan2_theta = 0.0;
  double sin2_theta = 0.0;               // alpha
  double group_velocity = 0.0;           // v = c cos^2(theta) [m/s]
  double dispersion = 0.0;               // C = sin^2(2 - 3 sin^2)/Omega^2 [s^2]
  double transparency_window = 0.0;      // delta_tr [1/s]
  double transparency_wavenumber = 0.0;  // q_tr = delta_tr / v [1/m]
  double optical_depth = 0.0;
};

// tan^2(theta) = n_a g^2 / Omega^2 for a single-atom coupling g [1/s].
double tan2_theta_from_coupling(double atom_density, double coupling, double rabi);

PolaritonParams polariton_params(const MediumParams& medium, const EitParams& eit,
                                 double tan2_theta);

// delta_tr = Omega^2 / (gamma sqrt(OD)), the transparency window of the whole medium.
double transparency_window(double rabi, double gamma, double optical_depth);

// EIT absorption loss rate R_EIT = (1/2) k_0 v Im chi for probe detuning Delta_p and total
// coupling detuning Delta_c (= delta_c + delta_NL). Vanishes on two-photon resonance.
double eit_loss_rate(double probe_detuning, double coupling_detuning_total,
                     const MediumParams& medium, const EitParams& eit, double group_velocity);

}  // namespace nlpol
