#pragma once

#include <numbers>

// CODATA 2018 values. Everything in the library works in SI; wavenumbers in
// cm^-1, dipoles in Debye and masses in amu are converted once on ingestion.
namespace rotocool::constants {

inline constexpr double pi = std::numbers::pi;

inline constexpr double h = 6.62607015e-34;        // J s
inline constexpr double hbar = h / (2.0 * pi);     // J s
inline constexpr double c = 299792458.0;           // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double k_B = 1.380649e-23;        // J/K

inline constexpr double debye_to_SI = 3.33564e-30;  // C m per Debye
inline constexpr double amu_to_kg = 1.66053906660e-27;
inline constexpr double per_cm_to_per_m = 100.0;

inline constexpr double hc = h * c;  // J m

}  // namespace rotocool::constants
