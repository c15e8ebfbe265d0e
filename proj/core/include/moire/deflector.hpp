#pragma once

namespace moire {

/// Electrode pair along the beam axis. The field-gradient factor (E grad)E_x
/// is uniform over [region_start, region_start + region_length] and zero
/// elsewhere; its magnitude is calibration * voltage^2. The calibration is a
/// per-setup scalar pinned from a measured (voltage, field factor) anchor
/// rather than computed from electrode shape.
struct DeflectionField {
  double voltage = 0.0;        // V
  double calibration = 0.0;    // (V^2/m^3) per V^2
  double region_start = 0.0;   // m from the first grating
  double region_length = 0.0;  // m
  double total_length = 0.0;   // m, first to third grating (2L)

  void validate() const;  // throws std::invalid_argument
};

/// (E grad)E_x = calibration * U^2, in V^2/m^3.
double field_factor(const DeflectionField& field);

/// Transverse acceleration of a particle with susceptibility volume chi:
/// a = 4 pi eps0 * chi * (E grad)E_x / m.
double stark_acceleration(double chi, double mass, const DeflectionField& field);

/// Ballistic displacement accumulated at the third grating:
///   ds = a/v^2 * l*(D + l/2),  D = distance from region end to grating 3.
/// Proportional to chi/m, to U^2 and to 1/v^2.
double stark_shift(double chi, double mass, const DeflectionField& field, double velocity);

/// Shift of the observed fringe pattern, d(2L) - 2 d(L) with d(y) the field
/// displacement at plane y. Equals stark_shift whenever the field region sits
/// behind the second grating; differs when the region straddles it, because
/// displacement picked up before grating 2 re-labels which slit a trajectory
/// threads rather than shifting the pattern.
double pattern_shift(double chi, double mass, const DeflectionField& field, double velocity);

struct TrajectoryState {
  double x = 0.0;    // m
  double v_x = 0.0;  // m/s
  double v_y = 0.0;  // m/s
};

/// Impulse applied by the field region: dv_x = a*l/v_y plus the in-region
/// displacement a/2*(l/v_y)^2. Straight-line drift is the engine's job.
TrajectoryState apply_kick(const TrajectoryState& state, double alpha_eff, double mass,
                           const DeflectionField& field);

}  // namespace moire
