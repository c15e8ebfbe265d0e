#pragma once

#include <string>
#include <vector>

namespace moire {

enum class PolarizabilityKind { kIsotropic, kLinearAnisotropic };

/// A sortable particle. Polarizabilities are volumes (m^3); for isotropic
/// species alpha_parallel == alpha_perp. Peptide presets carry their measured
/// susceptibility directly as an isotropic alpha, so the dipole term is zero
/// for every preset.
struct Species {
  std::string name;
  double mass = 0.0;            // kg
  double alpha_parallel = 0.0;  // m^3
  double alpha_perp = 0.0;      // m^3
  double dipole_moment = 0.0;   // C m
  double temperature = 0.0;     // K, thermal average of the dipole term
  PolarizabilityKind kind = PolarizabilityKind::kIsotropic;

  /// Scalar susceptibility volume: isotropic alpha plus the thermally
  /// averaged dipole contribution.
  double susceptibility() const;

  void validate() const;  // throws std::invalid_argument
};

/// Chiral indices and length of a single-wall carbon nanotube.
struct SwcntSpec {
  int n = 0;
  int m = 0;
  double length = 0.0;  // m

  bool metallic() const { return (n - m) % 3 == 0; }
  void validate() const;  // throws std::invalid_argument
};

/// Tube radius from the chiral indices, R = a*sqrt(n^2+nm+m^2)/(2 pi).
double swcnt_radius(const SwcntSpec& spec);

/// Carbon atoms in a tube of the given length (continuum estimate; exactly
/// linear in length). The zigzag unit cell of axial length sqrt(3)*a holds
/// 4n atoms; the general count follows from the same areal density.
double swcnt_atom_count(const SwcntSpec& spec);

double swcnt_mass(const SwcntSpec& spec);

/// Axial polarizability volume of a perfectly conducting hollow cylinder:
///   alpha = l^3 / (24 (ln(l/R)-1)) * (1 + (4/3 - ln 2)/(ln(l/R)-1))
/// Valid for l/R > e; throws std::domain_error below that.
double alpha_parallel_metallic(double length, double radius);

/// Axial polarizability volume of a semiconducting tube from the empirical
/// per-atom fit (8.2 R[nm]^2 + 20.5) A^3/atom, valid for R >= 0.35 nm.
double alpha_parallel_semiconducting(double radius, double atoms);

/// Transverse polarizability volume, 1.3 A^3/atom regardless of metallicity.
double alpha_perp_reduced();               // m^3 per atom
double alpha_perp(const SwcntSpec& spec);  // total for the tube

/// chi = alpha + mu^2 / (3 * 4 pi eps0 * k_B * T), as a volume. The 1/3 is
/// the isotropic orientation average of the dipole projection.
double susceptibility(double alpha, double dipole, double temperature);

/// Species built from a tube spec via the formula paths above.
Species swcnt_species(const SwcntSpec& spec);

/// Fixed catalog: C60, C70, YGW, YWG, swcnt-17-0-100nm, swcnt-9-0-100nm.
/// Nanotube presets pin the published polarizabilities verbatim rather than
/// re-deriving them, so scenario results stay anchored.
Species preset(const std::string& name);

std::vector<std::string> preset_names();

}  // namespace moire
