#include "moire/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "moire/constants.hpp"
#include "moire/species.hpp"

namespace moire::io {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_scan_csv(std::ostream& out, const FringeScan& scan) {
  out << "offset_nm,species,signal,stderr\n";
  for (std::size_t i = 0; i < scan.offsets.size(); ++i) {
    out << format_number(scan.offsets[i] * 1e9) << ',' << scan.species << ','
        << format_number(scan.signal[i]) << ',' << format_number(scan.std_error[i]) << '\n';
  }
}

void write_fit_csv(std::ostream& out, std::span<const FitReportRow> rows) {
  out << "species,mean_level,amplitude,visibility_fit,visibility_raw,shift_nm,residual_rms,"
         "converged\n";
  for (const auto& row : rows) {
    out << row.species << ',' << format_number(row.fit.mean) << ','
        << format_number(row.fit.amplitude) << ',' << format_number(row.fit.visibility) << ','
        << format_number(row.raw_visibility) << ',' << format_number(row.fit.shift * 1e9) << ','
        << format_number(row.fit.residual_rms) << ',' << (row.fit.converged ? "true" : "false")
        << '\n';
  }
}

void write_enrichment_csv(std::ostream& out, std::span<const VoltageOptimum> swept) {
  out << "voltage_kV,eta\n";
  for (const auto& point : swept)
    out << format_number(point.voltage / 1e3) << ',' << format_number(point.eta) << '\n';
}

void write_catalog_csv(std::ostream& out) {
  out << "name,mass_kg,mass_u,alpha_par_A3,alpha_perp_A3,metallicity\n";
  for (const auto& name : preset_names()) {
    Species s = preset(name);
    const char* metallicity = "-";
    if (name.rfind("swcnt-", 0) == 0) {
      // Preset names encode the chiral indices: swcnt-n-m-...
      int n = 0, m = 0;
      std::sscanf(name.c_str(), "swcnt-%d-%d", &n, &m);
      metallicity = ((n - m) % 3 == 0) ? "metallic" : "semiconducting";
    }
    out << s.name << ',' << format_number(s.mass) << ','
        << format_number(s.mass / constants::atomic_mass_unit) << ','
        << format_number(s.alpha_parallel / constants::angstrom3) << ','
        << format_number(s.alpha_perp / constants::angstrom3) << ',' << metallicity << '\n';
  }
}

void write_polarizability_grid_csv(std::ostream& out, double length_min, double length_max,
                                   int length_steps, double diameter_min, double diameter_max,
                                   int diameter_steps) {
  out << "length_nm,diameter_nm,atoms,alpha_par_metallic_A3_per_atom,"
         "alpha_par_semiconducting_A3_per_atom,alpha_perp_A3_per_atom\n";
  for (int i = 0; i < length_steps; ++i) {
    double l = length_min + (length_max - length_min) * i / std::max(1, length_steps - 1);
    for (int j = 0; j < diameter_steps; ++j) {
      double d = diameter_min + (diameter_max - diameter_min) * j / std::max(1, diameter_steps - 1);
      double radius = 0.5 * d;
      // Atom count from the areal density of the rolled graphene sheet.
      double per_length = 8.0 * std::numbers::pi * radius /
                          (std::sqrt(3.0) * constants::graphene_lattice *
                           constants::graphene_lattice);
      double atoms = per_length * l;
      double a_met = alpha_parallel_metallic(l, radius) / atoms / constants::angstrom3;
      double a_semi =
          alpha_parallel_semiconducting(radius, atoms) / atoms / constants::angstrom3;
      out << format_number(l * 1e9) << ',' << format_number(d * 1e9) << ','
          << format_number(atoms) << ',' << format_number(a_met) << ',' << format_number(a_semi)
          << ',' << format_number(alpha_perp_reduced() / constants::angstrom3) << '\n';
    }
  }
}

}  // namespace moire::io
