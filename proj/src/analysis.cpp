#include "nlpol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nlpol/error.hpp"
#include "nlpol/measure.hpp"

namespace nlpol {

using detail::require;

std::vector<SpectrumRow> spectrum_table(const Physics& phys, const std::vector<double>& ks) {
  std::vector<SpectrumRow> rows;
  rows.reserve(ks.size());
  for (double k : ks)
    rows.push_back({k, omega0(k, phys), spectrum(k, phys), kernel_ft(phys.potential, k)});
  return rows;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  require(count >= 1, "need at least one point");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = hi;
  return out;
}

Physics with_local_kernel(const Physics& phys) {
  Physics local = phys;
  if (phys.potential.kind == KernelKind::Grating) local.potential = local_reference(phys.potential);
  return local;
}

Feature roton_dip(const Physics& phys, double k_lo, double k_hi, std::size_t samples) {
  const Physics local = with_local_kernel(phys);
  Feature best{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::infinity()};
  for (double k : linspace(k_lo, k_hi, samples)) {
    const auto w = spectrum(k, phys);
    const auto wl = spectrum(k, local);
    if (w.imag() > 0 || wl.imag() > 0) continue;
    const double d = w.real() - wl.real();
    if (d < best.value) best = {k, d};
  }
  return best;
}

Feature spectrum_peak(const Physics& phys, double k_lo, double k_hi, std::size_t samples) {
  const auto ks = linspace(k_lo, k_hi, samples);
  std::vector<double> w(ks.size());
  std::vector<bool> stable(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto s = spectrum(ks[i], phys);
    w[i] = s.real();
    stable[i] = s.imag() == 0.0;
  }
  Feature best{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
    if (!(stable[i - 1] && stable[i] && stable[i + 1])) continue;
    if (w[i] > w[i - 1] && w[i] >= w[i + 1] && !(w[i] <= best.value)) best = {ks[i], w[i]};
  }
  return best;
}

std::vector<Feature> spectrum_minima(const Physics& phys, double k_lo, double k_hi,
                                     std::size_t samples) {
  const auto ks = linspace(k_lo, k_hi, samples);
  std::vector<Feature> out;
  std::vector<std::complex<double>> s(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) s[i] = spectrum(ks[i], phys);
  for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
    if (s[i - 1].imag() > 0 || s[i].imag() > 0 || s[i + 1].imag() > 0) continue;
    if (s[i].real() < s[i - 1].real() && s[i].real() <= s[i + 1].real())
      out.push_back({ks[i], s[i].real()});
  }
  return out;
}

Feature growth_peak(const Physics& phys, double k_lo, double k_hi, std::size_t samples) {
  Feature best{std::numeric_limits<double>::quiet_NaN(), 0.0};
  for (double k : linspace(k_lo, k_hi, samples)) {
    const double g = growth_rate(k, phys);
    if (g > best.value) best = {k, g};
  }
  return best;
}

ModeScanPoint simulate_mode(const Physics& phys, double k, const ModeScanOptions& options) {
  require(k > 0, "mode scan needs k > 0");
  const BogoliubovMode mode = bogoliubov_mode(k, phys);
  const double min_length = options.min_length > 0 ? options.min_length : 10.0 * phys.potential.range;
  const auto m = static_cast<long>(std::ceil(min_length * k / (2.0 * std::numbers::pi)));
  const double domain = static_cast<double>(m) * 2.0 * std::numbers::pi / k;
  const Grid grid(options.points, domain);
  require(m < static_cast<long>(options.points / 2), "grid too coarse for the requested k");
  const std::size_t index = grid.index_of_mode(m);
  const double kg = grid.wavenumber(index);
  if (std::abs(bogoliubov_mode(kg, phys).eigenvalue.imag()) > 0 || mode.eigenvalue.imag() > 0)
    throw std::domain_error("mode scan: k lies in the unstable band");

  SchemeConfig scheme;
  scheme.scheme = options.scheme;
  scheme.dt = 1.0;
  scheme.enforce_guard = false;
  const double rate = Propagator(grid, phys, scheme).stability_number();
  scheme.dt = rate > 0 ? options.guard_fraction * scheme.stability_guard / rate : 1e-9;
  scheme.enforce_guard = true;
  const Propagator prop(grid, phys, scheme);

  const double lambda = bogoliubov_mode(kg, phys).eigenvalue.real();
  double duration = options.duration;
  if (duration <= 0) {
    const double transit = options.medium_length > 0
                               ? 10.0 * options.medium_length / phys.polariton.group_velocity
                               : 0.0;
    duration = std::max(transit, options.bogoliubov_periods * 2.0 * std::numbers::pi / std::abs(lambda));
  }

  FieldState state = cw_state(grid, phys.cw, phys.alpha());
  seed_mode(state, index, options.amplitude_fraction * phys.cw.amplitude(phys.alpha()),
            SeedKind::BogoliubovPair, phys);
  const auto times = linspace(0.0, duration, options.samples + 1);
  std::vector<double> recorded;
  std::vector<std::complex<double>> values;
  values.reserve(times.size());
  prop.propagate(state, duration, times, [&](const FieldState& s) {
    recorded.push_back(s.time);
    values.push_back(mode_amplitude(s, index));
  });

  const double base = phys.cw_frequency() + phys.polariton.group_velocity * kg;
  OmegaOptions fit;
  fit.reference_frequency = base;
  fit.min_cycles = options.min_cycles;
  const OmegaFit f = measure_omega(recorded, values, fit);

  ModeScanPoint p;
  p.k = kg;
  p.domain = domain;
  p.dt = scheme.dt;
  p.measured = f.omega;
  p.analytic = full_dispersion(kg, phys);
  p.bogoliubov_measured = f.omega.real() - base;
  p.bogoliubov_analytic = lambda;
  p.relative_error = std::abs(p.bogoliubov_measured - lambda) / std::abs(lambda);
  p.monophase = f.monophase;
  return p;
}

}  // namespace nlpol
