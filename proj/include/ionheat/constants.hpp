#pragma once

// Physical constants, CODATA-2018, 10 significant digits. Kept in one place
// so every SI conversion in the project is reproducible digit-for-digit.
namespace ionheat::constants {

inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double speed_of_light = 2.997924580e8;        // m/s
inline constexpr double vacuum_permittivity = 8.854187813e-12; // F/m
inline constexpr double boltzmann = 1.380649e-23;              // J/K
inline constexpr double stefan_boltzmann = 5.670374419e-8;     // W m^-2 K^-4
inline constexpr double atomic_mass_unit = 1.660539067e-27;    // kg
inline constexpr double pi = 3.141592653589793;

}  // namespace ionheat::constants
