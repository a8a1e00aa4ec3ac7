#include "nlpol/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "nlpol/error.hpp"
#include "nlpol/fft.hpp"

namespace nlpol {

using cplx = std::complex<double>;
using detail::require;

void SchemeConfig::validate() const {
  detail::require_finite(dt, "scheme.dt");
  require(dt > 0, "scheme.dt must be positive");
  require(residual_substeps >= 1, "scheme.residual_substeps must be at least 1");
  require(stability_guard > 0, "scheme.stability_guard must be positive");
}

FieldState cw_state(const Grid& grid, const CwBackground& cw, double alpha) {
  cw.validate();
  const cplx value = cw.photon_density == 0.0 ? cplx(0.0) : std::polar(cw.amplitude(alpha), cw.phase);
  return FieldState{grid, std::vector<cplx>(grid.size(), value), 0.0};
}

namespace {

double mean_phase(const FieldState& state) {
  cplx sum = 0.0;
  for (const cplx& p : state.psi) sum += p;
  return sum == cplx(0.0) ? 0.0 : std::arg(sum);
}

// exp(i 2 pi m j / n) with the argument reduced exactly in integers.
cplx twiddle(long m, std::size_t j, std::size_t n) {
  const long long r = (static_cast<long long>(m) * static_cast<long long>(j)) %
                      static_cast<long long>(n);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace

bool seed_mode(FieldState& state, std::size_t k_index, double amplitude, SeedKind kind,
               const Physics& phys) {
  const Grid& grid = state.grid;
  const std::size_t n = grid.size();
  require(k_index < n, "seed index outside the grid");
  detail::require_finite(amplitude, "seed amplitude");
  const long m = grid.mode_of_index(k_index);
  require(m != 0 && m != -static_cast<long>(n / 2), "cannot seed the k = 0 or Nyquist bin");

  const bool linear = amplitude < 0.1 * phys.cw.amplitude(phys.alpha());
  if (amplitude == 0.0) return linear;

  const cplx lock = std::polar(amplitude, mean_phase(state));
  cplx plus = lock, minus = 0.0;
  switch (kind) {
    case SeedKind::PlaneWave:
      break;
    case SeedKind::Cosine:
      plus = 0.5 * lock;
      minus = 0.5 * lock;
      break;
    case SeedKind::BogoliubovPair:
      minus = lock * std::conj(bogoliubov_mode(grid.wavenumber(k_index), phys).mirror_ratio);
      break;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const cplx e = twiddle(m, j, n);
    state.psi[j] += plus * e + minus * std::conj(e);
  }
  return linear;
}

namespace {

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void seed_noise(FieldState& state, const NoiseSpectrum& noise, std::uint64_t rng_seed) {
  if (noise.amplitude == 0.0) return;
  noise.validate();
  const Grid& grid = state.grid;
  const std::size_t n = grid.size();
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32)};
  std::mt19937_64 rng(seq);

  std::vector<cplx> a(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    // Box-Muller on our own uniforms keeps the stream identical across standard libraries.
    const double u1 = 1.0 - uniform53(rng);
    const double u2 = uniform53(rng);
    if (i == n / 2) continue;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    const double scale = std::sqrt(0.5 * noise.occupation(grid.wavenumber(i)));
    a[i] = scale * cplx(r * std::cos(phi), r * std::sin(phi));
  }
  FftPlan plan(n);
  plan.backward(a, a);
  const double norm = 1.0 / std::sqrt(grid.length());
  for (std::size_t j = 0; j < n; ++j) state.psi[j] += norm * a[j];
}

std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

double field_norm(const FieldState& state) {
  double sum = 0.0;
  for (const cplx& p : state.psi) sum += std::norm(p);
  return sum * state.grid.spacing();
}

std::vector<cplx> mode_amplitudes(const FieldState& state) {
  const std::size_t n = state.grid.size();
  std::vector<cplx> a(n);
  FftPlan plan(n);
  plan.forward(state.psi, a);
  const double scale = std::sqrt(state.grid.length()) / static_cast<double>(n);
  for (cplx& x : a) x *= scale;
  return a;
}

cplx mode_amplitude(const FieldState& state, std::size_t k_index) {
  const std::size_t n = state.grid.size();
  require(k_index < n, "mode index outside the grid");
  const long m = state.grid.mode_of_index(k_index);
  cplx sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += state.psi[j] * std::conj(twiddle(m, j, n));
  return sum * (std::sqrt(state.grid.length()) / static_cast<double>(n));
}

struct Propagator::Impl {
  Grid grid;
  Physics phys;
  SchemeConfig config;
  FftPlan plan;
  FftPlan padded_plan;
  std::vector<double> kernel;  // U_k on the (possibly padded) grid
  std::vector<double> k2;
  std::vector<double> linear_rate;  // v k + s mean_detuning C v^2 k^2
  std::vector<cplx> half_a, full_a;
  double sign = 1.0;
  double mean_nl = 0.0;
  double alpha = 0.0;
  double dispersion_v2 = 0.0;

  Impl(const Grid& g, const Physics& p, const SchemeConfig& c)
      : grid(g),
        phys(p),
        config(c),
        plan(g.size()),
        padded_plan(c.convolution == ConvolutionMode::FiniteWindow ? 2 * g.size() : 1) {}

  std::vector<cplx> multiplier(double tau) const {
    std::vector<cplx> m(grid.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::polar(1.0, -linear_rate[i] * tau);
    return m;
  }

  void apply_linear(std::vector<cplx>& psi, double tau) const {
    const std::vector<cplx>* m = nullptr;
    std::vector<cplx> local;
    if (tau == 0.5 * config.dt)
      m = &half_a;
    else if (tau == config.dt)
      m = &full_a;
    else {
      local = multiplier(tau);
      m = &local;
    }
    plan.forward(psi, psi);
    const double inv = 1.0 / static_cast<double>(grid.size());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= (*m)[i] * inv;
    plan.backward(psi, psi);
  }

  std::vector<double> detuning(const std::vector<cplx>& psi) const {
    const std::size_t n = grid.size();
    std::vector<double> out(n);
    if (config.convolution == ConvolutionMode::Circular) {
      std::vector<cplx> f(n);
      for (std::size_t j = 0; j < n; ++j) f[j] = std::norm(psi[j]);
      plan.forward(f, f);
      for (std::size_t i = 0; i < n; ++i) f[i] *= kernel[i];
      plan.backward(f, f);
      const double scale = alpha / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) out[j] = scale * f[j].real();
    } else {
      std::vector<cplx> f(2 * n, 0.0);
      for (std::size_t j = 0; j < n; ++j) f[j] = std::norm(psi[j]);
      padded_plan.forward(f, f);
      for (std::size_t i = 0; i < 2 * n; ++i) f[i] *= kernel[i];
      padded_plan.backward(f, f);
      const double scale = alpha / static_cast<double>(2 * n);
      for (std::size_t j = 0; j < n; ++j) out[j] = scale * f[j].real();
    }
    return out;
  }

  void apply_phase(std::vector<cplx>& psi, double tau) const {
    const std::vector<double> d = detuning(psi);
    const double dc = phys.coupling_detuning;
    for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -alpha * (dc + d[j]) * tau);
  }

  // i s (delta_NL(z) - mean) C v^2 psi''
  void residual_rhs(const std::vector<cplx>& psi, const std::vector<double>& coef,
                    std::vector<cplx>& out) const {
    const std::size_t n = grid.size();
    out = psi;
    plan.forward(out, out);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] *= -k2[i] * inv;
    plan.backward(out, out);
    for (std::size_t j = 0; j < n; ++j) out[j] *= cplx(0.0, coef[j]);
  }

  void apply_residual(std::vector<cplx>& psi, double tau) const {
    const std::size_t n = grid.size();
    std::vector<double> coef = detuning(psi);
    for (double& c : coef) c = sign * (c - mean_nl) * dispersion_v2;
    const double h = tau / static_cast<double>(config.residual_substeps);
    std::vector<cplx> k1, mid(n);
    for (unsigned s = 0; s < config.residual_substeps; ++s) {
      residual_rhs(psi, coef, k1);
      for (std::size_t j = 0; j < n; ++j) mid[j] = psi[j] + 0.5 * h * k1[j];
      residual_rhs(mid, coef, k1);
      for (std::size_t j = 0; j < n; ++j) psi[j] += h * k1[j];
    }
  }

  void step(std::vector<cplx>& psi, double tau) const {
    const bool strang = config.composition == Composition::Strang;
    if (config.scheme == Scheme::MeanField) {
      if (strang) {
        apply_linear(psi, 0.5 * tau);
        apply_phase(psi, tau);
        apply_linear(psi, 0.5 * tau);
      } else {
        apply_linear(psi, tau);
        apply_phase(psi, tau);
      }
    } else {
      if (strang) {
        apply_linear(psi, 0.5 * tau);
        apply_phase(psi, 0.5 * tau);
        apply_residual(psi, tau);
        apply_phase(psi, 0.5 * tau);
        apply_linear(psi, 0.5 * tau);
      } else {
        apply_linear(psi, tau);
        apply_phase(psi, tau);
        apply_residual(psi, tau);
      }
    }
  }

  // count steps of length tau; with Strang composition the trailing and leading half steps
  // of the linear part are merged. check runs after every step (the merged form differs from
  // the stepwise one only by a norm-preserving half step).
  template <typename Check>
  void advance(std::vector<cplx>& psi, double tau, std::size_t count, Check&& check) const {
    if (count == 0) return;
    if (config.composition == Composition::Lie) {
      for (std::size_t i = 0; i < count; ++i) {
        step(psi, tau);
        check(i + 1);
      }
      return;
    }
    apply_linear(psi, 0.5 * tau);
    for (std::size_t i = 0; i < count; ++i) {
      if (config.scheme == Scheme::MeanField) {
        apply_phase(psi, tau);
      } else {
        apply_phase(psi, 0.5 * tau);
        apply_residual(psi, tau);
        apply_phase(psi, 0.5 * tau);
      }
      if (i + 1 < count) apply_linear(psi, tau);
      check(i + 1);
    }
    apply_linear(psi, 0.5 * tau);
  }

  double band() const {
    const double kr = std::abs(phys.potential.roton_wavenumber());
    const double kb = std::max(2.0 * phys.polariton.transparency_wavenumber,
                               kr + 5.0 / phys.potential.range);
    return std::min(kb, grid.max_wavenumber());
  }

  double stability_number() const {
    const double kb = band();
    double worst = 0.0;
    for (double k : grid.wavenumbers()) {
      if (std::abs(k) > kb) continue;
      const double w0 = omega0(k, phys);
      const double rate = std::abs(w0 + 2.0 * phys.cw.photon_density * kernel_ft(phys.potential, k));
      worst = std::max(worst, rate);
    }
    return worst * config.dt;
  }
};

Propagator::Propagator(const Grid& grid, const Physics& phys, const SchemeConfig& config) {
  config.validate();
  phys.validate();
  auto impl = std::make_unique<Impl>(grid, phys, config);
  const std::size_t n = grid.size();
  const auto& pol = phys.polariton;
  impl->alpha = pol.sin2_theta;
  impl->sign = config.dispersion_sign == DispersionSign::Analytic ? 1.0 : -1.0;
  impl->mean_nl = phys.mean_nonlinear_detuning();
  impl->dispersion_v2 = pol.dispersion * pol.group_velocity * pol.group_velocity;
  const double mean_detuning = phys.coupling_detuning + impl->mean_nl;

  impl->k2.resize(n);
  impl->linear_rate.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = grid.wavenumber(i);
    impl->k2[i] = k * k;
    impl->linear_rate[i] =
        pol.group_velocity * k + impl->sign * mean_detuning * impl->dispersion_v2 * k * k;
  }
  impl->half_a = impl->multiplier(0.5 * config.dt);
  impl->full_a = impl->multiplier(config.dt);

  if (config.convolution == ConvolutionMode::Circular) {
    impl->kernel.resize(n);
    for (std::size_t i = 0; i < n; ++i) impl->kernel[i] = kernel_ft(phys.potential, grid.wavenumber(i));
  } else {
    const Grid padded(2 * n, 2.0 * grid.length());
    impl->kernel = discretize_kernel(phys.potential, padded, false).spectrum;
  }

  if (config.enforce_guard) {
    const double s = impl->stability_number();
    if (s >= config.stability_guard) {
      std::ostringstream msg;
      msg << "time step too large: dt * max|omega0 + 2 n_p U_k| = " << s << " >= guard "
          << config.stability_guard << " (reduce dt below "
          << config.dt * config.stability_guard / s << " s)";
      throw ConfigError(msg.str());
    }
  }
  impl_ = std::move(impl);
}

Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

const SchemeConfig& Propagator::config() const noexcept { return impl_->config; }
const Grid& Propagator::grid() const noexcept { return impl_->grid; }
double Propagator::stability_number() const { return impl_->stability_number(); }
double Propagator::guard_band() const { return impl_->band(); }

void Propagator::step(FieldState& state) const { step(state, impl_->config.dt); }

void Propagator::step(FieldState& state, double dt) const {
  require(state.grid == impl_->grid, "state grid does not match the propagator grid");
  require(dt > 0, "step length must be positive");
  impl_->step(state.psi, dt);
  state.time += dt;
}

std::vector<double> Propagator::nonlinear_detuning(const FieldState& state) const {
  require(state.grid == impl_->grid, "state grid does not match the propagator grid");
  return impl_->detuning(state.psi);
}

namespace {

[[noreturn]] void blow_up(const FieldState& state, const char* what) {
  double k_fast = std::numeric_limits<double>::quiet_NaN();
  const auto a = mode_amplitudes(state);
  double best = -1.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double m = std::abs(a[i]);
    if (std::isfinite(m) && m > best) {
      best = m;
      k_fast = state.grid.wavenumber(i);
    }
  }
  std::ostringstream msg;
  msg << what << " at t = " << state.time << " s; dominant mode k = " << k_fast << " 1/m";
  throw NumericalError(msg.str(), k_fast);
}

}  // namespace

void Propagator::propagate(FieldState& state, double t_final, const std::vector<double>& sample_times,
                           const Observer& observer) const {
  require(state.grid == impl_->grid, "state grid does not match the propagator grid");
  detail::require_finite(t_final, "t_final");
  require(t_final >= state.time, "t_final lies before the current time");
  if (t_final == state.time) return;

  std::vector<double> targets;
  for (double t : sample_times)
    if (t >= state.time && t < t_final) targets.push_back(t);
  targets.push_back(t_final);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::vector<double> sorted(sample_times);
  std::sort(sorted.begin(), sorted.end());
  auto observed = [&](double t) {
    return observer && std::binary_search(sorted.begin(), sorted.end(), t);
  };

  const double norm0 = std::max(field_norm(state), std::numeric_limits<double>::min());
  const double dt = impl_->config.dt;
  if (observed(state.time) && targets.front() == state.time) {
    observer(state);
    targets.erase(targets.begin());
  }

  for (double target : targets) {
    const double start = state.time;
    const double span = target - start;
    // Steps of exactly dt, then one shortened step onto the target.
    const auto full = static_cast<std::size_t>(std::floor(span / dt * (1.0 + 1e-12)));
    impl_->advance(state.psi, dt, full, [&](std::size_t i) {
      state.time = start + static_cast<double>(i) * dt;
      const double norm = field_norm(state);
      if (!std::isfinite(norm)) blow_up(state, "field became non-finite");
      if (norm > 1e4 * norm0) blow_up(state, "field norm grew by more than 1e4");
    });
    const double rest = target - state.time;
    if (rest > 1e-9 * dt) impl_->step(state.psi, rest);
    state.time = target;
    if (observed(target)) observer(state);
  }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof(T));
  char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw IoError("checkpoint truncated");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

constexpr char kMagic[8] = {'N', 'L', 'P', 'C', 'K', 'P', 'T', '1'};

}  // namespace

void write_checkpoint(std::ostream& out, const FieldState& state) {
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, 1);
  put_le<std::uint32_t>(out, 0);
  put_le<std::uint64_t>(out, state.grid.size());
  put_le<double>(out, state.grid.length());
  put_le<double>(out, state.time);
  for (const cplx& p : state.psi) {
    put_le<double>(out, p.real());
    put_le<double>(out, p.imag());
  }
  if (!out) throw IoError("failed to write checkpoint");
}

FieldState read_checkpoint(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw IoError("not a checkpoint file");
  const auto version = get_le<std::uint32_t>(in);
  if (version != 1) throw IoError("unsupported checkpoint version " + std::to_string(version));
  get_le<std::uint32_t>(in);
  const auto n = get_le<std::uint64_t>(in);
  const double length = get_le<double>(in);
  const double time = get_le<double>(in);
  if (n < 256 || n > (std::uint64_t{1} << 30)) throw IoError("checkpoint grid size out of range");
  FieldState state{Grid(static_cast<std::size_t>(n), length), {}, time};
  state.psi.resize(static_cast<std::size_t>(n));
  for (auto& p : state.psi) {
    const double re = get_le<double>(in);
    const double im = get_le<double>(in);
    p = cplx(re, im);
  }
  return state;
}

void write_checkpoint(const std::string& path, const FieldState& state) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_checkpoint(out, state);
}

FieldState read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_checkpoint(in);
}

}  // namespace nlpol
