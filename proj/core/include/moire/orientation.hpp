#pragma once

#include "moire/random.hpp"
#include "moire/species.hpp"

namespace moire {

/// How a particle's symmetry axis relates to the deflection axis.
///  - aligned:          cos^2(theta) = 1 for every particle
///  - static-isotropic: axis frozen, direction uniform on the sphere
///  - rotor-averaged:   classical linear rotor; the axis precesses about an
///    isotropically distributed angular momentum J, so each particle carries
///    the time average cos^2(theta) = sin^2(theta_J)/2
enum class OrientationMode { kAligned, kStaticIsotropic, kRotorAveraged };

/// alpha_eff = alpha_perp + (alpha_par - alpha_perp) * cos^2(theta).
/// Throws std::domain_error if cos2theta is outside [0, 1].
double effective_alpha(const Species& species, double cos2theta);

/// Draws cos^2(theta) for one particle. Orientation is frozen for the whole
/// flight; support is {1}, [0,1] and [0,1/2] for the three modes.
double sample_cos2theta(OrientationMode mode, RandomStream& rng);

const char* orientation_mode_name(OrientationMode mode);

}  // namespace moire
