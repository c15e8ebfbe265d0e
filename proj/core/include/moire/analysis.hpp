#pragma once

#include <span>
#include <vector>

#include "moire/engine.hpp"

namespace moire {

/// Fundamental-harmonic fit S(x) = mean + amplitude*cos(2 pi (x - shift)/g).
/// visibility = amplitude/mean. The raw-extrema visibility of a scan is a
/// different quantity; see raw_visibility.
struct FringeFit {
  double mean = 0.0;
  double amplitude = 0.0;
  double visibility = 0.0;
  double shift = 0.0;         // m, in [0, period)
  double residual_rms = 0.0;  // same units as the signal
  bool converged = false;
};

/// S~ = S / (S_max + S_min) from the raw grid extrema. Invariant under
/// rescaling the signal, which is what removes the species' flux from the
/// comparison. Throws std::domain_error on an all-zero scan.
std::vector<double> normalize(const FringeScan& scan);

/// (S_max - S_min) / (S_max + S_min) of the raw curve.
double raw_visibility(const FringeScan& scan);

struct EnrichmentResult {
  double eta = 0.0;     // max over the shared grid of S~_1 - S~_2, in [-1, 1]
  double offset = 0.0;  // m, maximizer (smallest offset on ties)
};

/// Pointwise maximum of the difference of the two normalized curves over the
/// shared offset grid. Throws std::invalid_argument on grid mismatch.
EnrichmentResult enrichment(const FringeScan& first, const FringeScan& second);

/// Least-squares fit of the fundamental. Needs >= 8 offsets. A degenerate fit
/// (non-positive mean) comes back with converged = false and the residual
/// still filled in.
FringeFit fit_fringe(const FringeScan& scan);

struct VoltageOptimum {
  double voltage = 0.0;
  double eta = 0.0;
};

struct OptimizeOptions {
  int workers = 0;
  /// Sample divisor for the Monte-Carlo grid pass when CP forces it; the
  /// best voltage is re-evaluated at full samples.
  int coarse_divisor = 8;
};

/// Sweeps the voltage grid maximizing the worst-case enrichment of the target
/// species against every competitor, then refines by golden section (analytic
/// engine, CP off) around the best bracket. With CP enabled the grid runs
/// Monte Carlo and the refinement step is skipped. Ties pick the smallest
/// voltage. Also returns the swept curve for reporting.
VoltageOptimum optimize_voltage(const Scenario& scenario, std::size_t target,
                                std::span<const double> voltage_grid,
                                std::vector<VoltageOptimum>* swept = nullptr,
                                const OptimizeOptions& options = {});

}  // namespace moire
