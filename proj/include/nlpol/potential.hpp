#pragma once

#include <vector>

#include "nlpol/grid.hpp"

namespace nlpol {

enum class KernelKind { Grating, LocalDelta };

// Atom-atom interaction kernel U(z) [1/s] and its Fourier transform U_k [m/s].
//
// Grating:    U(z) = -(U_L/2) cos(k_Lz z) cos(k_B z) exp(-|z|/l)
// LocalDelta: U(z) = (U_L l / 8) delta(z)
//
// strength is signed. For the grating kernel U_L > 0 gives an attractive core.
struct PotentialSpec {
  KernelKind kind = KernelKind::Grating;
  double strength = 0.0;            // U_L [1/s]
  double range = 0.0;               // l [m]
  double laser_wavenumber_z = 0.0;  // k_Lz = k_L cos(theta_L) [1/m]
  double bragg_wavenumber = 0.0;    // k_B = pi / Lambda [1/m]

  static PotentialSpec grating(double strength, double range, double laser_wavenumber_z,
                               double bragg_wavenumber);
  static PotentialSpec local(double strength, double range);

  // k_R = k_Lz - k_B for the grating; 0 for the contact kernel.
  double roton_wavenumber() const noexcept;
  void validate() const;
};

// Pointwise U(z). Throws std::domain_error for LocalDelta (a distribution, not a function).
double kernel_value(const PotentialSpec& spec, double z);

// U_k = int dz U(z) exp(-ikz), closed form. Even in k.
double kernel_ft(const PotentialSpec& spec, double k);

// Contact kernel with the same weight convention as the grating: U_k = -U_L l / 8, i.e.
// attractive like the grating core. Used as the local-interaction comparison.
PotentialSpec local_reference(const PotentialSpec& grating);

// Laser-induced dipole-dipole interaction drive.
struct LiddiParams {
  double rabi = 0.0;             // Omega_L [1/s]
  double detuning = 0.0;         // delta_L [1/s], signed
  double eta = 0.0;              // guided-to-free-space emission ratio
  double gamma = 0.0;            // width of the |d> -> |s> transition [1/s]
  double laser_wavenumber = 0.0; // k_L [1/m]
  double tilt = 0.0;             // theta_L [rad]

  // |delta_L| >= ratio * Omega_L, the far-detuned regime the kernel assumes.
  bool far_detuned(double ratio = 10.0) const noexcept;
};

struct LiddiStrength {
  double strength = 0.0;        // U_L = 2 eta R_fs [1/s]
  double scattering_rate = 0.0; // R_fs = gamma Omega_L^2 / (2 delta_L^2) [1/s]
};

LiddiStrength liddi_strength(const LiddiParams& params);

// Omega_L = sqrt(c_I I) for a laser intensity I [W/m^2] and a transition-specific constant
// c_I [1/(s^2 W/m^2)].
double rabi_from_intensity(double intensity, double rabi2_per_intensity);

// k_L cos(theta_L)
double projected_wavenumber(double laser_wavenumber, double tilt);

// k_B = pi / Lambda
double bragg_wavenumber(double grating_period);

// Kernel sampled on a periodic grid. Real-space samples u_j (index j at minimum-image
// separation) hold the envelope-band kernel; spectrum[i] = dz * sum_j u_j exp(-i k_i z_j)
// (real for the even kernel), i.e. a discrete approximation of U_k at grid wavenumbers.
struct DiscreteKernel {
  std::vector<double> samples;
  std::vector<double> spectrum;
};

// Throws std::invalid_argument when the grid is shorter than 6 l. With periodic = false the
// samples are the bare kernel at minimum-image separation (no wrap-around images), which is what
// a zero-padded linear convolution needs.
DiscreteKernel discretize_kernel(const PotentialSpec& spec, const Grid& grid, bool periodic = true);

}  // namespace nlpol
