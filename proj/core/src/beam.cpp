#include "moire/beam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace moire {

namespace {

// FWHM of a Gaussian = 2 sqrt(2 ln 2) sigma.
constexpr double kFwhmToSigma = 2.3548200450309493;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

double thermal_weight(double v, double v_hi) {
  double r = v / v_hi;
  return r * r * r;
}

}  // namespace

double BeamModel::sigma_velocity() const {
  double fw = relative_spread * mean_velocity;
  return spread_convention == SpreadConvention::kFwhm ? fw / kFwhmToSigma : fw;
}

void BeamModel::validate(double grating_period) const {
  if (!(mean_velocity > 0.0)) throw std::invalid_argument("beam: mean velocity must be > 0");
  if (!(relative_spread >= 0.0 && relative_spread < 1.0))
    throw std::invalid_argument("beam: relative spread must lie in [0, 1)");
  if (grating_period > 0.0 && transverse_extent < 100.0 * grating_period)
    throw std::invalid_argument("beam: transverse extent must cover >= 100 grating periods");
  if (!(divergence >= 0.0)) throw std::invalid_argument("beam: divergence must be >= 0");
}

double sample_velocity(const BeamModel& beam, RandomStream& rng) {
  if (beam.relative_spread == 0.0) return beam.mean_velocity;
  double sigma = beam.sigma_velocity();
  double v_hi = beam.mean_velocity + 3.0 * sigma;
  for (;;) {
    double z = rng.normal();
    if (std::abs(z) > 3.0) continue;
    double v = beam.mean_velocity + sigma * z;
    if (beam.distribution == VelocityDistribution::kGaussian) return v;
    if (rng.uniform() < thermal_weight(v, v_hi)) return v;
  }
}

BeamEntry sample_entry(const BeamModel& beam, RandomStream& rng) {
  BeamEntry e;
  e.x = (rng.uniform() - 0.5) * beam.transverse_extent;
  e.angle = (rng.uniform() - 0.5) * 2.0 * beam.divergence;
  return e;
}

VelocityQuadrature velocity_quadrature(const BeamModel& beam, int points) {
  VelocityQuadrature q;
  if (beam.relative_spread == 0.0) {
    q.nodes = {beam.mean_velocity};
    q.weights = {1.0};
    return q;
  }
  double sigma = beam.sigma_velocity();
  double lo = beam.mean_velocity - 3.0 * sigma;
  double hi = beam.mean_velocity + 3.0 * sigma;
  std::vector<double> x, w;
  gauss_legendre(points, x, w);
  q.nodes.resize(points);
  q.weights.resize(points);
  double total = 0.0;
  for (int i = 0; i < points; ++i) {
    double v = 0.5 * (hi + lo) + 0.5 * (hi - lo) * x[i];
    double z = (v - beam.mean_velocity) / sigma;
    double pdf = std::exp(-0.5 * z * z);
    if (beam.distribution == VelocityDistribution::kThermal) pdf *= thermal_weight(v, hi);
    q.nodes[i] = v;
    q.weights[i] = w[i] * pdf;
    total += q.weights[i];
  }
  for (double& wi : q.weights) wi /= total;
  return q;
}

}  // namespace moire
