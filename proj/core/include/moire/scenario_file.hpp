#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "moire/engine.hpp"

namespace moire {

struct AnalysisConfig {
  std::string target;        // species name for optimization; empty = unset
  double voltage_min = 0.0;  // V
  double voltage_max = -1.0; // V, < 0 = unset
  int voltage_steps = 25;
};

struct ScenarioConfig {
  Scenario scenario;
  AnalysisConfig analysis;
  int workers = 0;
};

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(const std::string& message, int line, int column)
      : std::runtime_error(message), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses a scenario document. Sections: [species] (presets and weights),
/// [species.NAME] (preset or inline parameters), [beam], [gratings] (shared,
/// with [gratings.1..3] overrides), [deflector], [engine], [analysis].
/// Unknown sections or keys are rejected; dimensioned values require a unit
/// suffix. Overrides look like "section.key=value" and are applied before
/// validation.
ScenarioConfig parse_scenario_text(std::string_view text,
                                   std::span<const std::string> overrides = {});

ScenarioConfig load_scenario_file(const std::string& path,
                                  std::span<const std::string> overrides = {});

}  // namespace moire
