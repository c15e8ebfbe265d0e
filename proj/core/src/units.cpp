#include "moire/units.hpp"

#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

#include "moire/constants.hpp"

namespace moire::units {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array kUnits = {
    UnitDef{"m", Dimension::kLength, 1.0},
    UnitDef{"cm", Dimension::kLength, 1e-2},
    UnitDef{"mm", Dimension::kLength, 1e-3},
    UnitDef{"um", Dimension::kLength, 1e-6},
    UnitDef{"nm", Dimension::kLength, 1e-9},
    UnitDef{"A", Dimension::kLength, 1e-10},

    UnitDef{"m/s", Dimension::kVelocity, 1.0},
    UnitDef{"km/s", Dimension::kVelocity, 1e3},

    UnitDef{"V", Dimension::kVoltage, 1.0},
    UnitDef{"kV", Dimension::kVoltage, 1e3},

    UnitDef{"kg", Dimension::kMass, 1.0},
    UnitDef{"g", Dimension::kMass, 1e-3},
    UnitDef{"u", Dimension::kMass, constants::atomic_mass_unit},
    UnitDef{"amu", Dimension::kMass, constants::atomic_mass_unit},

    UnitDef{"m3", Dimension::kPolarizabilityVolume, 1.0},
    UnitDef{"nm3", Dimension::kPolarizabilityVolume, 1e-27},
    UnitDef{"A3", Dimension::kPolarizabilityVolume, constants::angstrom3},

    UnitDef{"V2/m3", Dimension::kFieldFactor, 1.0},

    UnitDef{"V2/m3/V2", Dimension::kCalibration, 1.0},
    UnitDef{"V2/m3/kV2", Dimension::kCalibration, 1e-6},

    UnitDef{"K", Dimension::kTemperature, 1.0},

    UnitDef{"C*m", Dimension::kDipole, 1.0},
    UnitDef{"D", Dimension::kDipole, constants::debye},

    UnitDef{"rad", Dimension::kAngle, 1.0},
    UnitDef{"mrad", Dimension::kAngle, 1e-3},
    UnitDef{"urad", Dimension::kAngle, 1e-6},
    UnitDef{"deg", Dimension::kAngle, kPi / 180.0},

    UnitDef{"%", Dimension::kDimensionless, 1e-2},
};

}  // namespace

std::optional<UnitDef> find_unit(std::string_view symbol) {
  for (const auto& u : kUnits) {
    if (u.symbol == symbol) return u;
  }
  return std::nullopt;
}

double to_si(double value, std::string_view unit) {
  auto def = find_unit(unit);
  if (!def) throw std::invalid_argument("unknown unit tag '" + std::string(unit) + "'");
  return value * def->to_si;
}

double to_display(double si_value, std::string_view unit) {
  auto def = find_unit(unit);
  if (!def) throw std::invalid_argument("unknown unit tag '" + std::string(unit) + "'");
  return si_value / def->to_si;
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::kLength: return "length";
    case Dimension::kVelocity: return "velocity";
    case Dimension::kVoltage: return "voltage";
    case Dimension::kMass: return "mass";
    case Dimension::kPolarizabilityVolume: return "polarizability volume";
    case Dimension::kFieldFactor: return "field factor";
    case Dimension::kCalibration: return "field calibration";
    case Dimension::kTemperature: return "temperature";
    case Dimension::kDipole: return "dipole moment";
    case Dimension::kAngle: return "angle";
    case Dimension::kDimensionless: return "dimensionless";
  }
  return "?";
}

}  // namespace moire::units
