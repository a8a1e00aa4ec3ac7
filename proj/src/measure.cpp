#include "nlpol/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nlpol/error.hpp"
#include "nlpol/fft.hpp"

namespace nlpol {

using cplx = std::complex<double>;
using detail::require;

namespace {

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

// Two strongest peaks of a Hann-windowed, zero-padded DFT; returns frequencies with the
// exp(-i omega t) convention.
std::vector<double> strongest_tones(const std::vector<double>& t, const std::vector<cplx>& b) {
  const std::size_t m = b.size();
  const double dt = (t.back() - t.front()) / static_cast<double>(m - 1);
  for (std::size_t i = 1; i < m; ++i)
    if (std::abs(t[i] - t[i - 1] - dt) > 1e-6 * dt) return {};
  std::size_t n = 1;
  while (n < 8 * m) n <<= 1;
  std::vector<cplx> buf(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                          static_cast<double>(m - 1));
    buf[i] = w * b[i];
  }
  FftPlan plan(n);
  // backward transform: sum b_i exp(+i 2 pi f i / n) peaks at f matching exp(-i omega t)
  plan.backward(buf, buf);
  std::vector<double> power(n);
  for (std::size_t i = 0; i < n; ++i) power[i] = std::norm(buf[i]);

  std::vector<std::pair<double, double>> peaks;  // (power, omega)
  for (std::size_t i = 0; i < n; ++i) {
    const double p0 = power[(i + n - 1) % n], p1 = power[i], p2 = power[(i + 1) % n];
    if (p1 <= p0 || p1 < p2) continue;
    const double denom = p0 - 2.0 * p1 + p2;
    const double shift = denom != 0.0 ? 0.5 * (p0 - p2) / denom : 0.0;
    double bin = static_cast<double>(i) + shift;
    if (bin >= static_cast<double>(n) / 2) bin -= static_cast<double>(n);
    peaks.emplace_back(p1, 2.0 * std::numbers::pi * bin / (static_cast<double>(n) * dt));
  }
  std::sort(peaks.begin(), peaks.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<double> tones;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, peaks.size()); ++i)
    tones.push_back(peaks[i].second);
  return tones;
}

}  // namespace

OmegaFit measure_omega(const std::vector<double>& times, const std::vector<cplx>& values,
                       const OmegaOptions& options) {
  require(times.size() == values.size(), "times and values differ in length");
  if (times.size() < 8) throw NumericalError("omega fit needs at least 8 samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], "sample times must increase");

  const std::size_t m = times.size();
  std::vector<cplx> b(m);
  std::vector<double> phase(m), logamp(m);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = values[i] * std::polar(1.0, options.reference_frequency * times[i]);
    if (b[i] == cplx(0.0)) throw NumericalError("mode amplitude vanishes in the record");
    logamp[i] = std::log(std::abs(b[i]));
  }
  phase[0] = std::arg(b[0]);
  for (std::size_t i = 1; i < m; ++i) {
    phase[i] = phase[i - 1] + std::arg(b[i] * std::conj(b[i - 1]));
  }

  const LineFit pf = fit_line(times, phase);
  const LineFit af = fit_line(times, logamp);
  OmegaFit out;
  const cplx residual(-pf.slope, af.slope);
  out.omega = residual + options.reference_frequency;
  out.phase_residual = pf.rms;
  out.amplitude_residual = af.rms;
  out.monophase = pf.rms <= options.monophase_tolerance && af.rms <= options.monophase_tolerance;
  if (!out.monophase) {
    out.tones = strongest_tones(times, b);
    for (double& w : out.tones) w += options.reference_frequency;
  }

  const double span = times.back() - times.front();
  if (std::abs(residual) * span < 2.0 * std::numbers::pi * options.min_cycles)
    throw NumericalError("record too short: fewer than the required oscillation cycles");
  return out;
}

Observables observe(const FieldState& state) {
  const std::size_t n = state.grid.size();
  Observables o;
  const auto a = mode_amplitudes(state);
  o.occupation.resize(n);
  for (std::size_t i = 0; i < n; ++i) o.occupation[i] = std::norm(a[i]);

  std::vector<cplx> f(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double intensity = std::norm(state.psi[j]);
    f[j] = intensity;
    total += intensity;
  }
  o.mean_intensity = total / static_cast<double>(n);
  FftPlan plan(n);
  plan.forward(f, f);
  for (cplx& x : f) x = std::norm(x);
  plan.backward(f, f);
  o.autocorrelation.resize(n);
  const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m) o.autocorrelation[m] = f[m].real() * scale;
  return o;
}

SpectrumEstimate estimate_nk(const std::vector<Observables>& members, const Grid& grid) {
  require(!members.empty(), "empty ensemble");
  const std::size_t n = grid.size();
  for (const auto& m : members) require(m.occupation.size() == n, "observable size mismatch");
  const double count = static_cast<double>(members.size());

  std::vector<std::size_t> order;
  for (std::size_t i = 1; i < n; ++i) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return grid.wavenumber(a) < grid.wavenumber(b); });

  SpectrumEstimate out;
  for (std::size_t i : order) {
    double sum = 0.0, sum2 = 0.0;
    for (const auto& m : members) {
      sum += m.occupation[i];
      sum2 += m.occupation[i] * m.occupation[i];
    }
    const double mean = sum / count;
    double err = 0.0;
    if (members.size() > 1) {
      const double var = std::max(0.0, (sum2 - count * mean * mean) / (count - 1.0));
      err = std::sqrt(var / count);
    }
    out.k.push_back(grid.wavenumber(i));
    out.mean.push_back(mean);
    out.error.push_back(err);
  }
  return out;
}

G2Estimate estimate_g2(const std::vector<Observables>& members, const Grid& grid,
                       const std::vector<double>& dz) {
  require(members.size() >= 2, "g2 needs an ensemble of at least two members");
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double count = static_cast<double>(members.size());

  double mean_i = 0.0;
  for (const auto& m : members) mean_i += m.mean_intensity;
  mean_i /= count;
  require(mean_i > 0, "g2 of a vanishing field");

  G2Estimate out;
  for (double d : dz) {
    detail::require_finite(d, "dz");
    const double steps = d / h;
    const long lag = std::lround(steps);
    require(std::abs(steps - static_cast<double>(lag)) <= 1e-6 * std::max(1.0, std::abs(steps)),
            "dz must be a multiple of the grid spacing");
    const std::size_t idx =
        static_cast<std::size_t>(((lag % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
    double sum = 0.0, sum_r = 0.0, sum_r2 = 0.0;
    for (const auto& m : members) {
      sum += m.autocorrelation[idx];
      const double r = m.autocorrelation[idx] / (m.mean_intensity * m.mean_intensity);
      sum_r += r;
      sum_r2 += r * r;
    }
    const double mean_r = sum_r / count;
    const double var = std::max(0.0, (sum_r2 - count * mean_r * mean_r) / (count - 1.0));
    out.dz.push_back(d);
    out.g2.push_back(sum / count / (mean_i * mean_i));
    out.error.push_back(std::sqrt(var / count));
  }
  return out;
}

SpectrumEstimate measure_nk(const std::vector<FieldState>& ensemble) {
  require(!ensemble.empty(), "empty ensemble");
  std::vector<Observables> obs;
  for (const auto& s : ensemble) obs.push_back(observe(s));
  return estimate_nk(obs, ensemble.front().grid);
}

G2Estimate measure_g2(const std::vector<FieldState>& ensemble, const std::vector<double>& dz) {
  require(ensemble.size() >= 2, "g2 needs an ensemble of at least two members");
  std::vector<Observables> obs;
  for (const auto& s : ensemble) obs.push_back(observe(s));
  return estimate_g2(obs, ensemble.front().grid, dz);
}

}  // namespace nlpol
