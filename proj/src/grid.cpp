#include "nlpol/grid.hpp"

#include <cmath>
#include <numbers>

#include "nlpol/error.hpp"

namespace nlpol {

Grid::Grid(std::size_t points, double length) : points_(points), length_(length) {
  detail::require(points >= 256, "grid needs at least 256 points");
  detail::require((points & (points - 1)) == 0, "grid size must be a power of two");
  detail::require_finite(length, "grid length");
  detail::require(length > 0, "grid length must be positive");
  wavenumbers_.resize(points_);
  for (std::size_t i = 0; i < points_; ++i)
    wavenumbers_[i] = wavenumber_step() * static_cast<double>(mode_of_index(i));
}

double Grid::wavenumber_step() const noexcept { return 2.0 * std::numbers::pi / length_; }

double Grid::max_wavenumber() const noexcept { return std::numbers::pi / spacing(); }

double Grid::wavenumber(std::size_t index) const noexcept { return wavenumbers_[index]; }

long Grid::mode_of_index(std::size_t index) const noexcept {
  const long n = static_cast<long>(points_);
  const long i = static_cast<long>(index);
  return i < n / 2 ? i : i - n;
}

std::size_t Grid::index_of_mode(long mode) const {
  const long n = static_cast<long>(points_);
  detail::require(mode >= -n / 2 && mode < n / 2, "mode number outside the grid");
  return static_cast<std::size_t>(mode >= 0 ? mode : mode + n);
}

std::size_t Grid::nearest_index(double k) const {
  const long n = static_cast<long>(points_);
  long mode = std::lround(k / wavenumber_step());
  if (mode >= n / 2) mode = n / 2 - 1;
  if (mode < -n / 2) mode = -n / 2;
  return index_of_mode(mode);
}

}  // namespace nlpol
