#pragma once

#include <ostream>
#include <span>
#include <string>

#include "moire/analysis.hpp"
#include "moire/engine.hpp"

namespace moire::io {

/// RFC-4180-style CSV, '.' decimal separator, offsets in nm.
void write_scan_csv(std::ostream& out, const FringeScan& scan);

struct FitReportRow {
  std::string species;
  FringeFit fit;
  double raw_visibility = 0.0;
};
void write_fit_csv(std::ostream& out, std::span<const FitReportRow> rows, double period);

void write_enrichment_csv(std::ostream& out, std::span<const VoltageOptimum> swept);

/// Preset catalog: name, mass, alphas, metallicity class.
void write_catalog_csv(std::ostream& out);

/// Reduced longitudinal polarizability surface over a length x diameter grid,
/// metallic and semiconducting branches side by side (A^3 per atom).
void write_polarizability_grid_csv(std::ostream& out, double length_min, double length_max,
                                   int length_steps, double diameter_min, double diameter_max,
                                   int diameter_steps);

std::string format_number(double v);

}  // namespace moire::io
