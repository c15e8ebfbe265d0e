#pragma once

#include <optional>
#include <string_view>

namespace moire::units {

enum class Dimension {
  kLength,
  kVelocity,
  kVoltage,
  kMass,
  kPolarizabilityVolume,
  kFieldFactor,   // (E grad)E_x, V^2/m^3
  kCalibration,   // field factor per applied volt^2
  kTemperature,
  kDipole,
  kAngle,
  kDimensionless,
};

struct UnitDef {
  std::string_view symbol;
  Dimension dimension;
  double to_si;  // multiply a display value by this to get SI
};

/// Looks up a unit symbol ("nm", "kV", "A3", ...). Empty result = unknown tag.
std::optional<UnitDef> find_unit(std::string_view symbol);

/// Converts a display-unit value to SI. Throws std::invalid_argument for an
/// unknown unit tag.
double to_si(double value, std::string_view unit);

/// Inverse of to_si for the same tag.
double to_display(double si_value, std::string_view unit);

const char* dimension_name(Dimension d);

}  // namespace moire::units
