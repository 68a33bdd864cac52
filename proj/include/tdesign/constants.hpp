#pragma once

namespace tdesign::constants {

// SI values (CODATA 2018).
inline constexpr double coulomb_k = 8.9875517923e9;        // N m^2 / C^2
inline constexpr double gravitational_G = 6.67430e-11;     // N m^2 / kg^2
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J / T

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Mass density of diamond in kg/m^3.
inline constexpr double diamond_density = 3510.0;

/// Highest harmonic degree handled by the Legendre recursions.
inline constexpr int max_degree = 32;

}  // namespace tdesign::constants
