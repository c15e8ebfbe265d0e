#include "moire/grating.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moire/constants.hpp"

namespace moire {

namespace {

constexpr double kCpForceCoeff =
    3.0 * constants::hbar * constants::speed_of_light / (2.0 * std::numbers::pi);

struct SlitState {
  double u;    // position relative to slit center
  double v;    // transverse velocity
  bool stuck;  // hit the absorption cutoff
};

// Velocity-Verlet integration of the two-wall CP force over the residence
// time, n steps. Walls sit at +-half_w.
SlitState integrate_slit(double u0, double v0, double force_scale, double half_w, double r_min,
                         double dwell, int n) {
  double dt = dwell / n;
  double u = u0, v = v0;
  auto accel = [&](double p) {
    double r_left = p + half_w;
    double r_right = half_w - p;
    double il = 1.0 / r_left, ir = 1.0 / r_right;
    double il2 = il * il, ir2 = ir * ir;
    return force_scale * (ir2 * ir2 * ir - il2 * il2 * il);
  };
  double a = accel(u);
  for (int i = 0; i < n; ++i) {
    u += v * dt + 0.5 * a * dt * dt;
    if (u + half_w < r_min || half_w - u < r_min) return {u, v, true};
    double a_next = accel(u);
    v += 0.5 * (a + a_next) * dt;
    a = a_next;
  }
  return {u, v, false};
}

}  // namespace

void GratingSpec::validate() const {
  if (!(period > 0.0)) throw std::invalid_argument("grating: period must be > 0");
  if (!(open_fraction > 0.0 && open_fraction < 1.0))
    throw std::invalid_argument("grating: open fraction must lie in (0, 1)");
  if (!(thickness > 0.0)) throw std::invalid_argument("grating: thickness must be > 0");
  if (!(r_min > 0.0 && r_min < 0.5 * slit_width()))
    throw std::invalid_argument("grating: need 0 < r_min < half the slit width");
}

double cp_potential(double r, double alpha) {
  return -0.25 * kCpForceCoeff * alpha / (r * r * r * r);
}

double cp_force(double r, double alpha) {
  return kCpForceCoeff * alpha / (r * r * r * r * r);
}

std::optional<GratingExit> transmit(double x_entry, double v_x, double v_y, double alpha,
                                    double mass, const GratingSpec& spec) {
  double g = spec.period;
  // Fold to the nearest slit center.
  double u = x_entry - g * std::floor(x_entry / g + 0.5);
  double half_w = 0.5 * spec.slit_width();
  if (std::abs(u) > half_w) return std::nullopt;
  if (!spec.cp_enabled) return GratingExit{x_entry, v_x};

  if (!(v_y > 0.0)) throw std::invalid_argument("transmit: forward velocity must be > 0");
  if (half_w - std::abs(u) < spec.r_min) return std::nullopt;

  double force_scale = kCpForceCoeff * alpha / mass;
  double dwell = spec.thickness / v_y;
  double tol = 1e-3 * spec.slit_width();

  // Step-halve until the exit state settles (compared between n and 2n).
  SlitState coarse = integrate_slit(u, v_x, force_scale, half_w, spec.r_min, dwell, 32);
  for (int n = 64; n <= 4096; n *= 2) {
    SlitState fine = integrate_slit(u, v_x, force_scale, half_w, spec.r_min, dwell, n);
    if (coarse.stuck && fine.stuck) return std::nullopt;
    if (coarse.stuck == fine.stuck && std::abs(fine.u - coarse.u) <= tol &&
        std::abs(fine.v - coarse.v) * dwell <= tol) {
      coarse = fine;
      break;
    }
    coarse = fine;
  }
  if (coarse.stuck) return std::nullopt;
  return GratingExit{x_entry + (coarse.u - u), coarse.v};
}

}  // namespace moire
