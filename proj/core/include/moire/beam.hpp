#pragma once

#include <vector>

#include "moire/random.hpp"

namespace moire {

enum class SpreadConvention { kFwhm, kSigma };
enum class VelocityDistribution { kGaussian, kThermal };

/// Source ensemble: forward velocity distribution plus transverse entry
/// position and trajectory angle. The beam is wide and weakly collimated on
/// purpose; the gratings, not the source, define the spatial resolution.
struct BeamModel {
  double mean_velocity = 0.0;     // m/s
  double relative_spread = 0.0;   // dv/v, FWHM by default
  SpreadConvention spread_convention = SpreadConvention::kFwhm;
  VelocityDistribution distribution = VelocityDistribution::kGaussian;
  double transverse_extent = 0.0; // m, uniform illumination width
  double divergence = 0.0;        // rad, uniform half-width
  double flux_weight = 1.0;

  double sigma_velocity() const;
  void validate(double grating_period) const;  // throws std::invalid_argument
};

/// Gaussian (or v^3-weighted thermal) forward velocity, truncated at 3 sigma.
double sample_velocity(const BeamModel& beam, RandomStream& rng);

struct BeamEntry {
  double x = 0.0;      // m, transverse position at the first grating
  double angle = 0.0;  // rad
};

/// Uniform position over the transverse extent, uniform angle over the
/// divergence window.
BeamEntry sample_entry(const BeamModel& beam, RandomStream& rng);

/// Quadrature nodes/weights of the forward-velocity distribution over its
/// truncated support; shared by the analytic engine so the model matches the
/// sampler exactly. Returns a single node when the spread is zero.
struct VelocityQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;  // sums to 1
};
VelocityQuadrature velocity_quadrature(const BeamModel& beam, int points = 61);

}  // namespace moire
