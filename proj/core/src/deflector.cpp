#include "moire/deflector.hpp"

#include <algorithm>
#include <stdexcept>

#include "moire/constants.hpp"

namespace moire {

void DeflectionField::validate() const {
  if (!(calibration >= 0.0)) throw std::invalid_argument("deflector: calibration must be >= 0");
  if (!(total_length > 0.0)) throw std::invalid_argument("deflector: total length must be > 0");
  if (!(region_length >= 0.0) || region_start < 0.0 ||
      region_start + region_length > total_length + 1e-12)
    throw std::invalid_argument("deflector: field region must fit inside [0, 2L]");
}

double field_factor(const DeflectionField& field) {
  return field.calibration * field.voltage * field.voltage;
}

double stark_acceleration(double chi, double mass, const DeflectionField& field) {
  return constants::four_pi_eps0 * chi * field_factor(field) / mass;
}

namespace {

// Field displacement at plane y for unit acceleration (multiply by a/v^2).
double displacement_factor(const DeflectionField& field, double y) {
  double y0 = field.region_start;
  double y1 = field.region_start + field.region_length;
  if (y <= y0) return 0.0;
  double inside = std::min(y, y1) - y0;
  double d = 0.5 * inside * inside;
  if (y > y1) d += inside * (y - y1);
  return d;
}

}  // namespace

double stark_shift(double chi, double mass, const DeflectionField& field, double velocity) {
  if (!(velocity > 0.0)) throw std::invalid_argument("stark_shift: velocity must be > 0");
  double a = stark_acceleration(chi, mass, field);
  return a / (velocity * velocity) * displacement_factor(field, field.total_length);
}

double pattern_shift(double chi, double mass, const DeflectionField& field, double velocity) {
  if (!(velocity > 0.0)) throw std::invalid_argument("pattern_shift: velocity must be > 0");
  double a = stark_acceleration(chi, mass, field);
  double half = 0.5 * field.total_length;
  return a / (velocity * velocity) *
         (displacement_factor(field, field.total_length) - 2.0 * displacement_factor(field, half));
}

TrajectoryState apply_kick(const TrajectoryState& state, double alpha_eff, double mass,
                           const DeflectionField& field) {
  if (!(state.v_y > 0.0)) throw std::invalid_argument("apply_kick: forward velocity must be > 0");
  double a = stark_acceleration(alpha_eff, mass, field);
  double t = field.region_length / state.v_y;
  TrajectoryState out = state;
  out.x += 0.5 * a * t * t;
  out.v_x += a * t;
  return out;
}

}  // namespace moire
