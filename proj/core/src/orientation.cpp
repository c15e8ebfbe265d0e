#include "moire/orientation.hpp"

#include <stdexcept>

namespace moire {

double effective_alpha(const Species& species, double cos2theta) {
  if (!(cos2theta >= 0.0 && cos2theta <= 1.0))
    throw std::domain_error("cos^2(theta) must lie in [0, 1]");
  if (species.kind == PolarizabilityKind::kIsotropic) return species.alpha_parallel;
  return species.alpha_perp + (species.alpha_parallel - species.alpha_perp) * cos2theta;
}

double sample_cos2theta(OrientationMode mode, RandomStream& rng) {
  switch (mode) {
    case OrientationMode::kAligned:
      return 1.0;
    case OrientationMode::kStaticIsotropic: {
      double c = rng.uniform(-1.0, 1.0);
      return c * c;
    }
    case OrientationMode::kRotorAveraged: {
      double cj = rng.uniform(-1.0, 1.0);
      return 0.5 * (1.0 - cj * cj);
    }
  }
  throw std::invalid_argument("unknown orientation mode");
}

const char* orientation_mode_name(OrientationMode mode) {
  switch (mode) {
    case OrientationMode::kAligned: return "aligned";
    case OrientationMode::kStaticIsotropic: return "static-isotropic";
    case OrientationMode::kRotorAveraged: return "rotor-averaged";
  }
  return "?";
}

}  // namespace moire
