#include "nlpol/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace nlpol {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const std::complex<double>* p) {
  // FFTW never writes to the input of an out-of-place transform planned without
  // FFTW_DESTROY_INPUT semantics for complex DFTs.
  return reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(p));
}

}  // namespace

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (size == 0) throw std::invalid_argument("FFT size must be positive");
  std::vector<std::complex<double>> a(size), b(size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int n = static_cast<int>(size);
  std::lock_guard lock(planner_mutex());
  forward_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD, flags);
  forward_inplace_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(a.data()), FFTW_FORWARD, flags);
  backward_inplace_ =
      fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(a.data()), FFTW_BACKWARD, flags);
  if (!forward_ || !backward_ || !forward_inplace_ || !backward_inplace_) {
    release();
    throw std::runtime_error("FFTW planning failed");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : size_(other.size_),
      forward_(other.forward_),
      forward_inplace_(other.forward_inplace_),
      backward_(other.backward_),
      backward_inplace_(other.backward_inplace_) {
  other.forward_ = other.forward_inplace_ = other.backward_ = other.backward_inplace_ = nullptr;
  other.size_ = 0;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    size_ = other.size_;
    forward_ = other.forward_;
    forward_inplace_ = other.forward_inplace_;
    backward_ = other.backward_;
    backward_inplace_ = other.backward_inplace_;
    other.forward_ = other.forward_inplace_ = other.backward_ = other.backward_inplace_ = nullptr;
    other.size_ = 0;
  }
  return *this;
}

void FftPlan::release() noexcept {
  std::lock_guard lock(planner_mutex());
  for (fftw_plan* p : {&forward_, &forward_inplace_, &backward_, &backward_inplace_}) {
    if (*p) fftw_destroy_plan(*p);
    *p = nullptr;
  }
}

void FftPlan::forward(std::span<const std::complex<double>> in,
                      std::span<std::complex<double>> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("FFT size mismatch");
  if (in.data() == out.data())
    fftw_execute_dft(forward_inplace_, as_fftw(in.data()), as_fftw(out.data()));
  else
    fftw_execute_dft(forward_, as_fftw(in.data()), as_fftw(out.data()));
}

void FftPlan::backward(std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out) const {
  if (in.size() != size_ || out.size() != size_) throw std::invalid_argument("FFT size mismatch");
  if (in.data() == out.data())
    fftw_execute_dft(backward_inplace_, as_fftw(in.data()), as_fftw(out.data()));
  else
    fftw_execute_dft(backward_, as_fftw(in.data()), as_fftw(out.data()));
}

}  // namespace nlpol
