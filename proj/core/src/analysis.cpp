#include "moire/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace moire {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_same_grid(const FringeScan& a, const FringeScan& b) {
  if (a.offsets.size() != b.offsets.size() || a.period != b.period)
    throw std::invalid_argument("enrichment: scans use different offset grids");
  for (std::size_t i = 0; i < a.offsets.size(); ++i)
    if (a.offsets[i] != b.offsets[i])
      throw std::invalid_argument("enrichment: scans use different offset grids");
}

}  // namespace

std::vector<double> normalize(const FringeScan& scan) {
  if (scan.signal.empty()) throw std::domain_error("normalize: empty scan");
  auto [lo, hi] = std::minmax_element(scan.signal.begin(), scan.signal.end());
  double denom = *lo + *hi;
  if (denom <= 0.0) throw std::domain_error("normalize: scan carries no signal");
  std::vector<double> out(scan.signal.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = scan.signal[i] / denom;
  return out;
}

double raw_visibility(const FringeScan& scan) {
  if (scan.signal.empty()) throw std::domain_error("raw_visibility: empty scan");
  auto [lo, hi] = std::minmax_element(scan.signal.begin(), scan.signal.end());
  double denom = *hi + *lo;
  if (denom <= 0.0) throw std::domain_error("raw_visibility: scan carries no signal");
  return (*hi - *lo) / denom;
}

EnrichmentResult enrichment(const FringeScan& first, const FringeScan& second) {
  check_same_grid(first, second);
  std::vector<double> a = normalize(first);
  std::vector<double> b = normalize(second);
  EnrichmentResult best{a[0] - b[0], first.offsets[0]};
  for (std::size_t i = 1; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d > best.eta) {
      best.eta = d;
      best.offset = first.offsets[i];
    }
  }
  return best;
}

FringeFit fit_fringe(const FringeScan& scan) {
  if (scan.offsets.size() < 8) throw std::invalid_argument("fit_fringe: need at least 8 offsets");
  const double g = scan.period;
  const std::size_t n = scan.offsets.size();

  // Linear least squares on (1, cos kx, sin kx); solved via normal equations.
  double m[3][3] = {};
  double rhs[3] = {};
  for (std::size_t i = 0; i < n; ++i) {
    double phase = kTwoPi * scan.offsets[i] / g;
    double basis[3] = {1.0, std::cos(phase), std::sin(phase)};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += basis[r] * scan.signal[i];
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int order[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[order[r]][col]) > std::abs(m[order[pivot]][col])) pivot = r;
    std::swap(order[col], order[pivot]);
    double diag = m[order[col]][col];
    if (std::abs(diag) < 1e-300) throw std::invalid_argument("fit_fringe: singular design matrix");
    for (int r = col + 1; r < 3; ++r) {
      double f = m[order[r]][col] / diag;
      for (int c = col; c < 3; ++c) m[order[r]][c] -= f * m[order[col]][c];
      rhs[order[r]] -= f * rhs[order[col]];
    }
  }
  double sol[3];
  for (int col = 2; col >= 0; --col) {
    double acc = rhs[order[col]];
    for (int c = col + 1; c < 3; ++c) acc -= m[order[col]][c] * sol[c];
    sol[col] = acc / m[order[col]][col];
  }

  FringeFit fit;
  fit.mean = sol[0];
  fit.amplitude = std::hypot(sol[1], sol[2]);
  double shift = std::atan2(sol[2], sol[1]) / kTwoPi * g;
  fit.shift = shift - g * std::floor(shift / g);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double phase = kTwoPi * scan.offsets[i] / g;
    double model = sol[0] + sol[1] * std::cos(phase) + sol[2] * std::sin(phase);
    double r = scan.signal[i] - model;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  if (fit.mean > 0.0) {
    fit.visibility = fit.amplitude / fit.mean;
    fit.converged = true;
  }
  return fit;
}

namespace {

struct EtaEvaluator {
  const Scenario* base;
  std::size_t target;
  bool analytic;
  int samples;
  int workers;
  const ShadowOracle* oracle;
  std::vector<double> offsets;

  double operator()(double voltage) const {
    Scenario s = *base;
    s.field.voltage = voltage;
    s.samples_per_offset = samples;
    std::vector<FringeScan> scans(s.species.size());
    if (analytic) {
      for (std::size_t i = 0; i < s.species.size(); ++i)
        scans[i] = analytic_scan_offsets(s, i, offsets, *oracle);
    } else {
      for (std::size_t i = 0; i < s.species.size(); ++i)
        scans[i] = run_scan_offsets(s, i, offsets, workers);
    }
    double eta = 2.0;
    for (std::size_t i = 0; i < scans.size(); ++i) {
      if (i == target) continue;
      eta = std::min(eta, enrichment(scans[target], scans[i]).eta);
    }
    return eta;
  }
};

}  // namespace

VoltageOptimum optimize_voltage(const Scenario& scenario, std::size_t target,
                                std::span<const double> voltage_grid,
                                std::vector<VoltageOptimum>* swept,
                                const OptimizeOptions& options) {
  scenario.validate();
  if (scenario.species.size() < 2)
    throw std::invalid_argument("optimize_voltage: needs at least two species");
  if (target >= scenario.species.size())
    throw std::invalid_argument("optimize_voltage: target index out of range");
  if (voltage_grid.empty()) throw std::invalid_argument("optimize_voltage: empty voltage grid");

  const bool analytic = !scenario.cp_enabled();
  std::optional<ShadowOracle> oracle;
  if (analytic) oracle.emplace(scenario.gratings);

  EtaEvaluator eval;
  eval.base = &scenario;
  eval.target = target;
  eval.analytic = analytic;
  eval.samples = analytic ? scenario.samples_per_offset
                          : std::max(1000, scenario.samples_per_offset /
                                               std::max(1, options.coarse_divisor));
  eval.workers = options.workers;
  eval.oracle = analytic ? &*oracle : nullptr;
  eval.offsets.resize(scenario.offsets_per_period);
  double g = scenario.gratings[0].period;
  for (int j = 0; j < scenario.offsets_per_period; ++j)
    eval.offsets[j] = g * j / scenario.offsets_per_period;

  std::size_t best = 0;
  double best_eta = -2.0;
  for (std::size_t i = 0; i < voltage_grid.size(); ++i) {
    double eta = eval(voltage_grid[i]);
    if (swept) swept->push_back({voltage_grid[i], eta});
    if (eta > best_eta) {
      best_eta = eta;
      best = i;
    }
  }

  VoltageOptimum result{voltage_grid[best], best_eta};
  if (analytic && voltage_grid.size() >= 2) {
    double lo = voltage_grid[best > 0 ? best - 1 : best];
    double hi = voltage_grid[std::min(best + 1, voltage_grid.size() - 1)];
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 48 && (b - a) > 1e-9 * (hi - lo + 1.0); ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = eval(d);
      }
    }
    double mid = 0.5 * (a + b);
    double fm = eval(mid);
    if (fm > result.eta || (fm == result.eta && mid < result.voltage)) result = {mid, fm};
  } else if (!analytic) {
    // Re-evaluate the winning grid point at full resolution.
    EtaEvaluator full = eval;
    full.samples = scenario.samples_per_offset;
    result.eta = full(result.voltage);
  }
  return result;
}

}  // namespace moire
