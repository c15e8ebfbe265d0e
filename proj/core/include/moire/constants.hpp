#pragma once

#include <numbers>

namespace moire::constants {

// CODATA 2018. c and k_B are exact SI definitions.
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double speed_of_light = 2.99792458e8;   // m/s
inline constexpr double boltzmann = 1.380649e-23;        // J/K
inline constexpr double eps0 = 8.8541878128e-12;         // F/m
inline constexpr double four_pi_eps0 = 4.0 * std::numbers::pi * eps0;
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

// Polarizability is carried as a polarizability volume (m^3, shown in A^3).
// Stark force:  F = 4*pi*eps0 * alpha_vol * (E grad)E_x
// CP energy:    U = -(3 hbar c / 8 pi) * alpha_vol / r^4
inline constexpr double angstrom3 = 1e-30;               // m^3 per A^3
inline constexpr double debye = 1e-21 / speed_of_light;  // C m

// Graphene lattice constant; fixes nanotube radius and atom density.
inline constexpr double graphene_lattice = 0.246e-9;     // m

inline constexpr double carbon_mass = 12.011 * atomic_mass_unit;  // kg

}  // namespace moire::constants
