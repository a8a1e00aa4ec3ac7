#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace nlpol {

// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Integration blew up or a numerical procedure failed (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          double fastest_wavenumber = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), fastest_wavenumber_(fastest_wavenumber) {}

  // Wavenumber [1/m] of the dominant non-CW mode when the failure was detected.
  double fastest_wavenumber() const noexcept { return fastest_wavenumber_; }

 private:
  double fastest_wavenumber_;
};

// File could not be read or written (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

inline void require_finite(double value, const char* name) {
  if (!(value == value) || value == std::numeric_limits<double>::infinity() ||
      value == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace detail
}  // namespace nlpol
