#pragma once

#include <optional>

namespace moire {

/// One micro-machined grating. Slits of width f*g are centered on integer
/// multiples of the period, so transmission is symmetric about slit centers.
/// r_min is the absorption cutoff: below that wall distance the long-range
/// potential no longer applies and the particle is taken as stuck.
struct GratingSpec {
  double period = 0.0;         // m
  double open_fraction = 0.0;  // (0, 1)
  double thickness = 500e-9;   // m
  bool cp_enabled = false;
  double r_min = 1e-9;         // m

  double slit_width() const { return open_fraction * period; }
  void validate() const;  // throws std::invalid_argument
};

/// Particle-wall Casimir-Polder potential at distance r from an ideally
/// conducting wall, long-distance form: U(r) = -(3 hbar c / 8 pi) alpha/r^4.
double cp_potential(double r, double alpha);

/// Magnitude of the attractive force toward the wall, (3 hbar c / 2 pi) alpha/r^5.
double cp_force(double r, double alpha);

struct GratingExit {
  double x = 0.0;    // m, same frame as the entry coordinate
  double v_x = 0.0;  // m/s
};

/// Passes a trajectory through the grating. Entry over a bar blocks. Inside a
/// slit with CP enabled, the transverse motion integrates under the two-wall
/// force across the thickness; reaching r_min of either wall absorbs the
/// particle. Without CP this is the plain binary mask.
std::optional<GratingExit> transmit(double x_entry, double v_x, double v_y, double alpha,
                                    double mass, const GratingSpec& spec);

}  // namespace moire
