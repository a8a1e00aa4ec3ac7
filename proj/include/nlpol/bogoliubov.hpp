#pragma once

#include <complex>

#include "nlpol/medium.hpp"
#include "nlpol/potential.hpp"

namespace nlpol {

// Uniform CW solution psi(t) = psi0 exp(i phi) exp(-i (alpha delta_c + n_p U_0) t).
struct CwBackground {
  double photon_density = 0.0;  // n_p = alpha^2 |psi0|^2 [1/m]
  double phase = 0.0;           // phi [rad]

  // |psi0| = sqrt(n_p) / alpha
  double amplitude(double alpha) const;
  void validate() const;
};

// Initial fluctuation spectrum N_k = N_0 exp(-(k/q)^2), even in k by construction.
struct NoiseSpectrum {
  double amplitude = 0.0;  // N_0
  double cutoff = 0.0;     // q [1/m]

  double occupation(double k) const;
  void validate() const;
};

enum class Statistics { Classical, Quantum };

// Everything the linearized analysis needs.
struct Physics {
  PolaritonParams polariton;
  PotentialSpec potential;
  CwBackground cw;
  double coupling_detuning = 0.0;  // delta_c [1/s]

  double alpha() const noexcept { return polariton.sin2_theta; }
  double interaction_u0() const;           // U_0 [m/s]
  double mean_nonlinear_detuning() const;  // n_p U_0 / alpha [1/s]
  double cw_frequency() const;             // alpha delta_c + n_p U_0 [1/s]
  void validate() const;
};

// omega_k^0 = (n_p U_0 / alpha + delta_c) C v^2 k^2
double omega0(double k, const Physics& phys);

// omega_k = sqrt(omega0 (omega0 + 2 n_p U_k)), Re >= 0 and Im >= 0.
std::complex<double> spectrum(double k, const Physics& phys);

// Im omega_k
double growth_rate(double k, const Physics& phys);

// Frequency of the Fourier component at k of the particle-like Bogoliubov mode, in the lab
// frame: alpha delta_c + n_p U_0 + v k + sgn(k) s omega_k where s = sgn(omega0 + n_p U_k)
// picks the branch that continues to the free dispersion as U -> 0.
// Throws std::domain_error on unstable k.
double full_dispersion(double k, const Physics& phys);

// Eigenvalue lambda of the 2x2 generator for (c_k, c*_{-k}) and the ratio r = c*_{-k}/c_k of
// its eigenvector. Stable: lambda = s omega_k; unstable: lambda = i gamma_k (growing).
struct BogoliubovMode {
  std::complex<double> eigenvalue;
  std::complex<double> mirror_ratio;
};
BogoliubovMode bogoliubov_mode(double k, const Physics& phys);

struct MuNu {
  std::complex<double> mu;
  std::complex<double> nu;
};

// Dynamic Bogoliubov coefficients c_k(t) = mu c_k(0) + nu c*_{-k}(0).
MuNu mu_nu(double k, double t, const Physics& phys);

// Same thing by the literal complex formula cos(omega t) - i ((n_p U_k + omega0)/omega) sin(omega t)
// with the requested branch sign of omega; used to check branch invariance.
MuNu mu_nu_complex_branch(double k, double t, const Physics& phys, bool flip_branch);

// G_k = (|mu| - |nu|)^2
double squeezing_spectrum(double k, double t, const Physics& phys);

// Quantum: |mu|^2 N_k + |nu|^2 (N_k + 1). Classical drops the +1.
double mode_occupation(double k, double t, const NoiseSpectrum& noise, Statistics stats,
                       const Physics& phys);

struct G2Options {
  double k_max = 0.0;        // 0: max(5 q, k_R + 20/l)
  double tolerance = 1e-4;   // absolute, on g2 - 1
  unsigned max_depth = 15;
};

struct G2Value {
  double value = 1.0;
  double error = 0.0;  // quadrature error estimate on g2 - 1
};

// Linearized intensity correlation at separation dz. Throws NumericalError if the quadrature or
// its tail does not meet the tolerance.
G2Value g2(double dz, double t, const NoiseSpectrum& noise, Statistics stats, const Physics& phys,
           const G2Options& options = {});

struct BogoliubovResult {
  double k = 0.0;
  double omega0 = 0.0;
  std::complex<double> omega;
  double gamma = 0.0;
  std::complex<double> mu;
  std::complex<double> nu;
  double squeezing = 1.0;
  double occupation = 0.0;
};

BogoliubovResult evaluate(double k, double t, const NoiseSpectrum& noise, Statistics stats,
                          const Physics& phys);

}  // namespace nlpol
