#pragma once

#include <cstddef>
#include <vector>

namespace nlpol {

// Periodic 1d grid z_j = j dz, j = 0..n-1, with wavenumbers in FFT order
// (0, dk, ..., (n/2-1) dk, -n/2 dk, ..., -dk).
class Grid {
 public:
  Grid(std::size_t points, double length);

  std::size_t size() const noexcept { return points_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(points_); }
  double wavenumber_step() const noexcept;
  double max_wavenumber() const noexcept;  // Nyquist, pi / dz

  double position(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }
  double wavenumber(std::size_t index) const noexcept;
  const std::vector<double>& wavenumbers() const noexcept { return wavenumbers_; }

  // FFT index for the signed mode number m (m dk), m in [-n/2, n/2).
  std::size_t index_of_mode(long mode) const;
  long mode_of_index(std::size_t index) const noexcept;
  // Index of the grid wavenumber closest to k.
  std::size_t nearest_index(double k) const;

  bool operator==(const Grid& other) const noexcept {
    return points_ == other.points_ && length_ == other.length_;
  }

 private:
  std::size_t points_;
  double length_;
  std::vector<double> wavenumbers_;
};

}  // namespace nlpol
