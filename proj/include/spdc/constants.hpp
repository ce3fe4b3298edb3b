#pragma once

#include <numbers>

namespace spdc::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double hbar = 1.054571817e-34;        // J s

inline constexpr double omega_from_wavelength(double lambda_m) {
  return 2.0 * pi * speed_of_light / lambda_m;
}
inline constexpr double wavelength_from_omega(double omega) {
  return 2.0 * pi * speed_of_light / omega;
}

}  // namespace spdc::constants
