#pragma once

namespace cycles::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// SI defining constants (exact) and CODATA 2018 measured values.
inline constexpr double speed_of_light = 2.99792458e8;        // m/s, exact
inline constexpr double planck_h = 6.62607015e-34;            // J s, exact
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double electron_mass_kg = 9.1093837015e-31;  // kg
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double electron_mass_ev = 510998.95000;      // eV, m_e c^2

// Solar weak-field reference values.
inline constexpr double solar_gm_si = 1.32712440018e20;  // m^3/s^2
inline constexpr double solar_radius_si = 6.957e8;       // m

}  // namespace cycles::constants
