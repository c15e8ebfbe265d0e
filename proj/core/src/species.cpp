#include "moire/species.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "moire/constants.hpp"

namespace moire {

namespace {

constexpr double kPi = std::numbers::pi;

// C60 polarizability volume measured in beam deflectometry; C70 is pinned
// through the measured ratio 1.22.
constexpr double kAlphaC60 = 88.9;       // A^3
constexpr double kFullereneRatio = 1.22;

Species make_isotropic(std::string name, double mass_u, double chi_a3) {
  Species s;
  s.name = std::move(name);
  s.mass = mass_u * constants::atomic_mass_unit;
  s.alpha_parallel = chi_a3 * constants::angstrom3;
  s.alpha_perp = s.alpha_parallel;
  s.kind = PolarizabilityKind::kIsotropic;
  return s;
}

Species make_tube(std::string name, double mass_kg, double a_par_a3, double a_perp_a3) {
  Species s;
  s.name = std::move(name);
  s.mass = mass_kg;
  s.alpha_parallel = a_par_a3 * constants::angstrom3;
  s.alpha_perp = a_perp_a3 * constants::angstrom3;
  s.kind = PolarizabilityKind::kLinearAnisotropic;
  return s;
}

}  // namespace

double Species::susceptibility() const {
  return moire::susceptibility(alpha_parallel, dipole_moment, temperature);
}

void Species::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("species '" + name + "': mass must be > 0");
  if (kind == PolarizabilityKind::kIsotropic) {
    if (alpha_parallel != alpha_perp)
      throw std::invalid_argument("species '" + name + "': isotropic species need equal alphas");
  } else {
    if (!(alpha_parallel >= alpha_perp && alpha_perp >= 0.0))
      throw std::invalid_argument("species '" + name +
                                  "': need alpha_parallel >= alpha_perp >= 0");
  }
  if (dipole_moment != 0.0 && !(temperature > 0.0))
    throw std::invalid_argument("species '" + name + "': dipole term needs temperature > 0");
}

void SwcntSpec::validate() const {
  if (!(n > 0 && m >= 0 && n >= m))
    throw std::invalid_argument("tube indices need n >= m >= 0 and n > 0");
  if (!(length > 0.0)) throw std::invalid_argument("tube length must be > 0");
}

double swcnt_radius(const SwcntSpec& spec) {
  spec.validate();
  double q = std::sqrt(double(spec.n) * spec.n + double(spec.n) * spec.m + double(spec.m) * spec.m);
  return constants::graphene_lattice * q / (2.0 * kPi);
}

double swcnt_atom_count(const SwcntSpec& spec) {
  spec.validate();
  double q = std::sqrt(double(spec.n) * spec.n + double(spec.n) * spec.m + double(spec.m) * spec.m);
  double per_length = 4.0 * q / (std::sqrt(3.0) * constants::graphene_lattice);
  return per_length * spec.length;
}

double swcnt_mass(const SwcntSpec& spec) {
  return swcnt_atom_count(spec) * constants::carbon_mass;
}

double alpha_parallel_metallic(double length, double radius) {
  if (!(length > 0.0 && radius > 0.0))
    throw std::domain_error("metallic polarizability needs positive length and radius");
  double log_term = std::log(length / radius) - 1.0;
  if (!(log_term > 0.0))
    throw std::domain_error("metallic polarizability needs aspect ratio l/R > e");
  double lead = length * length * length / (24.0 * log_term);
  return lead * (1.0 + (4.0 / 3.0 - std::numbers::ln2) / log_term);
}

double alpha_parallel_semiconducting(double radius, double atoms) {
  double r_nm = radius / 1e-9;
  if (!(r_nm >= 0.35))
    throw std::domain_error("semiconducting fit is valid for R >= 0.35 nm only");
  double per_atom_a3 = 8.2 * r_nm * r_nm + 20.5;
  return per_atom_a3 * constants::angstrom3 * atoms;
}

double alpha_perp_reduced() { return 1.3 * constants::angstrom3; }

double alpha_perp(const SwcntSpec& spec) { return alpha_perp_reduced() * swcnt_atom_count(spec); }

double susceptibility(double alpha, double dipole, double temperature) {
  if (dipole == 0.0) return alpha;
  if (!(temperature > 0.0))
    throw std::domain_error("susceptibility with a dipole needs temperature > 0");
  return alpha + dipole * dipole /
                     (3.0 * constants::four_pi_eps0 * constants::boltzmann * temperature);
}

Species swcnt_species(const SwcntSpec& spec) {
  spec.validate();
  double radius = swcnt_radius(spec);
  double atoms = swcnt_atom_count(spec);
  Species s;
  s.name = "swcnt-" + std::to_string(spec.n) + "-" + std::to_string(spec.m);
  s.mass = atoms * constants::carbon_mass;
  s.alpha_parallel = spec.metallic() ? alpha_parallel_metallic(spec.length, radius)
                                     : alpha_parallel_semiconducting(radius, atoms);
  s.alpha_perp = alpha_perp(spec);
  s.kind = PolarizabilityKind::kLinearAnisotropic;
  s.validate();
  return s;
}

Species preset(const std::string& name) {
  if (name == "C60") return make_isotropic("C60", 720.0, kAlphaC60);
  if (name == "C70") return make_isotropic("C70", 840.0, kAlphaC60 * kFullereneRatio);
  if (name == "YGW") return make_isotropic("YGW", 460.0, 480.0);
  if (name == "YWG") return make_isotropic("YWG", 460.0, 100.0);
  if (name == "swcnt-17-0-100nm")
    return make_tube("swcnt-17-0-100nm", 3.2e-22, 3.8e5, 2.6e4);
  if (name == "swcnt-9-0-100nm")
    return make_tube("swcnt-9-0-100nm", 1.7e-22, 1.1e7, 9.5e3);
  throw std::invalid_argument("unknown species preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"C60", "C70", "YGW", "YWG", "swcnt-17-0-100nm", "swcnt-9-0-100nm"};
}

}  // namespace moire
