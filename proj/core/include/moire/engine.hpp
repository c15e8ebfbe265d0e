#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moire/beam.hpp"
#include "moire/deflector.hpp"
#include "moire/grating.hpp"
#include "moire/orientation.hpp"
#include "moire/species.hpp"

namespace moire {

struct ScenarioSpecies {
  Species species;
  double weight = 1.0;
  std::optional<double> velocity_override;  // m/s, replaces beam mean velocity
};

/// Full description of one simulation: the mixture, the source, three grating
/// planes at 0, L and 2L, and the deflection field between them.
struct Scenario {
  std::vector<ScenarioSpecies> species;
  BeamModel beam;
  std::array<GratingSpec, 3> gratings;
  DeflectionField field;
  double grating_separation = 0.0;  // m (L)
  OrientationMode orientation = OrientationMode::kAligned;
  int samples_per_offset = 200000;
  int offsets_per_period = 64;
  std::uint64_t seed = 1;

  bool cp_enabled() const;
  void validate() const;  // throws std::invalid_argument
  std::uint64_t hash() const;
};

/// Transmitted fraction versus third-grating offset for one species. Offsets
/// cover exactly one period; offset g wraps to offset 0.
struct FringeScan {
  std::string species;
  double period = 0.0;
  std::vector<double> offsets;    // m
  std::vector<double> signal;     // transmitted fraction, in [0, 1]
  std::vector<double> std_error;  // binomial, zero for the analytic engine
  long attempted = 0;             // particles per offset (0 = analytic)
  std::uint64_t seed = 0;
  std::uint64_t scenario_hash = 0;
};

/// Monte-Carlo scan: one fixed particle ensemble per species, reused at every
/// third-grating offset (common random numbers). Deterministic for a fixed
/// seed independent of worker count; workers = 0 picks the hardware count.
std::vector<FringeScan> run_scan(const Scenario& scenario, int workers = 0);

/// Same, for one species on an arbitrary offset grid.
FringeScan run_scan_offsets(const Scenario& scenario, std::size_t species_index,
                            std::span<const double> offsets, int workers = 0);

/// Zero-shift shadow signal of three binary gratings, tabulated once by
/// direct numerical convolution over entry position and trajectory slope.
/// Geometry-only: voltage and velocity enter later as a rigid pattern shift,
/// so one oracle serves a whole voltage sweep.
class ShadowOracle {
 public:
  explicit ShadowOracle(const std::array<GratingSpec, 3>& gratings, int grid = 4096,
                        int slope_nodes = 2048);

  /// S0 at pattern coordinate y (periodic, linear interpolation).
  double base_signal(double y) const;

  double period() const { return period_; }

 private:
  double period_ = 0.0;
  std::vector<double> base_;
};

/// CP-free shadow oracle: direct numerical convolution of the three binary
/// slit functions over entry position and trajectory slope, averaged over the
/// velocity distribution. Assumes the uniform angular fill the beam invariants
/// require. Throws std::invalid_argument if any grating has CP enabled or the
/// orientation mode is not aligned (anisotropic species have no single chi
/// without an orientation).
std::vector<FringeScan> analytic_scan(const Scenario& scenario);

FringeScan analytic_scan_offsets(const Scenario& scenario, std::size_t species_index,
                                 std::span<const double> offsets);

FringeScan analytic_scan_offsets(const Scenario& scenario, std::size_t species_index,
                                 std::span<const double> offsets, const ShadowOracle& oracle);

/// Weighted sum of per-species signals (weights renormalized to 1).
std::vector<double> mixture_signal(std::span<const FringeScan> scans,
                                   std::span<const double> weights);

}  // namespace moire
