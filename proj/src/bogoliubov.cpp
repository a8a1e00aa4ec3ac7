#include "nlpol/bogoliubov.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nlpol/error.hpp"

namespace nlpol {

using detail::require;
using detail::require_finite;
using cplx = std::complex<double>;

double CwBackground::amplitude(double alpha) const {
  require(alpha > 0, "CW amplitude needs alpha > 0");
  return std::sqrt(photon_density) / alpha;
}

void CwBackground::validate() const {
  require_finite(photon_density, "cw.photon_density");
  require_finite(phase, "cw.phase");
  require(photon_density >= 0, "cw.photon_density must be non-negative");
}

double NoiseSpectrum::occupation(double k) const {
  if (amplitude == 0.0) return 0.0;
  const double x = k / cutoff;
  return amplitude * std::exp(-x * x);
}

void NoiseSpectrum::validate() const {
  require_finite(amplitude, "noise.amplitude");
  require_finite(cutoff, "noise.cutoff");
  require(amplitude >= 0, "noise.amplitude must be non-negative");
  require(cutoff > 0, "noise.cutoff must be positive");
}

double Physics::interaction_u0() const { return kernel_ft(potential, 0.0); }

double Physics::mean_nonlinear_detuning() const {
  return cw.photon_density * interaction_u0() / alpha();
}

double Physics::cw_frequency() const {
  return alpha() * coupling_detuning + cw.photon_density * interaction_u0();
}

void Physics::validate() const {
  potential.validate();
  cw.validate();
  require_finite(coupling_detuning, "coupling_detuning");
  require(alpha() > 0 && alpha() <= 1, "sin2_theta must lie in (0, 1]");
  require(polariton.group_velocity > 0, "group velocity must be positive");
}

namespace {

struct Generator {
  double a;   // omega0 + n_p U_k
  double b;   // n_p U_k
  double w2;  // a^2 - b^2 = omega0 (omega0 + 2 n_p U_k)
};

Generator generator(double k, const Physics& phys) {
  const double w0 = omega0(k, phys);
  const double nu = phys.cw.photon_density * kernel_ft(phys.potential, k);
  return {w0 + nu, nu, w0 * (w0 + 2.0 * nu)};
}

}  // namespace

double omega0(double k, const Physics& phys) {
  const auto& p = phys.polariton;
  const double v = p.group_velocity;
  return (phys.mean_nonlinear_detuning() + phys.coupling_detuning) * p.dispersion * v * v * k * k;
}

cplx spectrum(double k, const Physics& phys) {
  const double w2 = generator(k, phys).w2;
  if (w2 >= 0) return {std::sqrt(w2), 0.0};
  return {0.0, std::sqrt(-w2)};
}

double growth_rate(double k, const Physics& phys) { return spectrum(k, phys).imag(); }

double full_dispersion(double k, const Physics& phys) {
  const Generator g = generator(k, phys);
  if (g.w2 < 0) throw std::domain_error("full_dispersion: mode is unstable");
  const double branch = g.a < 0 ? -1.0 : 1.0;
  const double sk = k < 0 ? -1.0 : 1.0;
  return phys.cw_frequency() + phys.polariton.group_velocity * k + sk * branch * std::sqrt(g.w2);
}

BogoliubovMode bogoliubov_mode(double k, const Physics& phys) {
  const Generator g = generator(k, phys);
  cplx lambda;
  if (g.w2 >= 0)
    lambda = (g.a < 0 ? -1.0 : 1.0) * std::sqrt(g.w2);
  else
    lambda = cplx(0.0, std::sqrt(-g.w2));
  cplx ratio = 0.0;
  if (g.b != 0.0) ratio = (lambda - g.a) / g.b;
  return {lambda, ratio};
}

MuNu mu_nu(double k, double t, const Physics& phys) {
  const Generator g = generator(k, phys);
  // c = cos(omega t), s = sin(omega t) / omega, both real for real omega^2.
  double c, s;
  const double x2 = g.w2 * t * t;
  if (std::abs(x2) < 1e-12) {
    c = 1.0 - 0.5 * x2;
    s = t * (1.0 - x2 / 6.0);
  } else if (g.w2 > 0) {
    const double w = std::sqrt(g.w2);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else {
    const double w = std::sqrt(-g.w2);
    c = std::cosh(w * t);
    s = std::sinh(w * t) / w;
  }
  return {cplx(c, -g.a * s), cplx(0.0, -g.b * s)};
}

MuNu mu_nu_complex_branch(double k, double t, const Physics& phys, bool flip_branch) {
  const Generator g = generator(k, phys);
  cplx w = spectrum(k, phys);
  if (flip_branch) w = -w;
  const cplx i(0.0, 1.0);
  if (std::abs(w * t) < 1e-6) return {1.0 - i * g.a * t, -i * g.b * t};
  const cplx sn = std::sin(w * t);
  return {std::cos(w * t) - i * (g.a / w) * sn, -i * (g.b / w) * sn};
}

double squeezing_spectrum(double k, double t, const Physics& phys) {
  const MuNu m = mu_nu(k, t, phys);
  const double d = std::abs(m.mu) - std::abs(m.nu);
  return d * d;
}

double mode_occupation(double k, double t, const NoiseSpectrum& noise, Statistics stats,
                       const Physics& phys) {
  const MuNu m = mu_nu(k, t, phys);
  const double n = noise.occupation(k);
  const double vacuum = stats == Statistics::Quantum ? 1.0 : 0.0;
  return std::norm(m.mu) * n + std::norm(m.nu) * (n + vacuum);
}

G2Value g2(double dz, double t, const NoiseSpectrum& noise, Statistics stats, const Physics& phys,
           const G2Options& options) {
  require_finite(dz, "dz");
  require(phys.cw.photon_density > 0, "g2 needs a non-zero CW density");
  require(options.tolerance > 0, "g2 tolerance must be positive");
  noise.validate();

  const double l = phys.potential.range;
  const double kr = std::abs(phys.potential.roton_wavenumber());
  const double q = noise.cutoff;
  const double k_max = options.k_max > 0 ? options.k_max : std::max(5.0 * q, kr + 20.0 / l);
  const double vacuum = stats == Statistics::Quantum ? 1.0 : 0.0;
  const double alpha = phys.alpha();
  const double prefactor = 2.0 * alpha * alpha / (std::numbers::pi * phys.cw.photon_density);

  auto integrand = [&](double k) {
    const MuNu m = mu_nu(k, t, phys);
    const double n = noise.occupation(k);
    const double anomalous = (m.mu * m.nu).real();  // |mu||nu| cos(arg(mu nu))
    const double f = std::norm(m.mu) * n + std::norm(m.nu) * (n + vacuum) +
                     (2.0 * n + vacuum) * anomalous;
    return f * std::cos(k * dz);
  };

  std::vector<double> cuts{0.0, q, 2.0 * q, 3.0 * q, k_max};
  if (kr > 0) {
    for (double m : {-10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0}) cuts.push_back(kr + m / l);
  }
  std::erase_if(cuts, [&](double c) { return c < 0.0 || c > k_max; });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  using boost::math::quadrature::gauss_kronrod;
  double integral = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    integral += gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1],
                                                     options.max_depth, 1e-10, &err);
    error += err;
  }
  double tail_err = 0.0;
  const double tail = gauss_kronrod<double, 31>::integrate(integrand, k_max, 4.0 * k_max,
                                                           options.max_depth, 1e-8, &tail_err);

  G2Value out;
  out.value = 1.0 + prefactor * integral;
  out.error = prefactor * (error + std::abs(tail));
  if (!std::isfinite(out.value))
    throw NumericalError("g2 quadrature produced a non-finite value");
  if (prefactor * error > options.tolerance)
    throw NumericalError("g2 quadrature did not converge to the requested tolerance");
  if (prefactor * std::abs(tail) > options.tolerance)
    throw NumericalError("g2 integrand tail beyond k_max exceeds the tolerance; raise k_max");
  return out;
}

BogoliubovResult evaluate(double k, double t, const NoiseSpectrum& noise, Statistics stats,
                          const Physics& phys) {
  BogoliubovResult r;
  r.k = k;
  r.omega0 = omega0(k, phys);
  r.omega = spectrum(k, phys);
  r.gamma = r.omega.imag();
  const MuNu m = mu_nu(k, t, phys);
  r.mu = m.mu;
  r.nu = m.nu;
  const double d = std::abs(m.mu) - std::abs(m.nu);
  r.squeezing = d * d;
  r.occupation = mode_occupation(k, t, noise, stats, phys);
  return r;
}

}  // namespace nlpol
