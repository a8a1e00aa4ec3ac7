#pragma once

#include <complex>
#include <cstddef>
#include <span>

typedef struct fftw_plan_s* fftw_plan;

namespace nlpol {

// Owning pair of FFTW plans for complex transforms of a fixed length. Plans are created
// with FFTW_ESTIMATE so the chosen algorithm (and the result bits) does not depend on timing.
// execute_* may run concurrently on distinct buffers; construction is serialized internally.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const noexcept { return size_; }

  // out_k = sum_j in_j exp(-2 pi i jk/n). In-place allowed.
  void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;
  // out_j = sum_k in_k exp(+2 pi i jk/n), unnormalized. In-place allowed.
  void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

 private:
  void release() noexcept;

  std::size_t size_ = 0;
  fftw_plan forward_ = nullptr;
  fftw_plan forward_inplace_ = nullptr;
  fftw_plan backward_ = nullptr;
  fftw_plan backward_inplace_ = nullptr;
};

}  // namespace nlpol
