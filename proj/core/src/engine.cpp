#include "moire/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace moire {

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t, std::size_t)>& body) {
  workers = resolve_workers(workers);
  if (workers == 1 || count < 2) {
    body(0, count);
    return;
  }
  std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    std::size_t begin = std::min(count, w * chunk);
    std::size_t end = std::min(count, begin + chunk);
    if (begin == end) break;
    pool.emplace_back(body, begin, end);
  }
  for (auto& t : pool) t.join();
}

// Straight-line drift with a uniform transverse force inside [y0, y1].
void propagate(double& x, double& v_x, double y_from, double y_to, double v_y, double accel,
               double y0, double y1) {
  auto advance = [&](double from, double to) {
    if (to <= from) return;
    double t = (to - from) / v_y;
    double mid = 0.5 * (from + to);
    if (accel != 0.0 && mid > y0 && mid < y1) {
      x += v_x * t + 0.5 * accel * t * t;
      v_x += accel * t;
    } else {
      x += v_x * t;
    }
  };
  double cuts[2] = {std::clamp(y0, y_from, y_to), std::clamp(y1, y_from, y_to)};
  advance(y_from, cuts[0]);
  advance(cuts[0], cuts[1]);
  advance(cuts[1], y_to);
}

double dipole_term(const Species& s) {
  return susceptibility(0.0, s.dipole_moment, s.temperature);
}

BeamModel beam_for(const Scenario& scenario, const ScenarioSpecies& sp) {
  BeamModel beam = scenario.beam;
  if (sp.velocity_override) beam.mean_velocity = *sp.velocity_override;
  return beam;
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g;", v);
  out += buf;
}

}  // namespace

bool Scenario::cp_enabled() const {
  return gratings[0].cp_enabled || gratings[1].cp_enabled || gratings[2].cp_enabled;
}

void Scenario::validate() const {
  if (species.empty()) throw std::invalid_argument("scenario: needs at least one species");
  for (const auto& sp : species) {
    sp.species.validate();
    if (!(sp.weight > 0.0)) throw std::invalid_argument("scenario: species weights must be > 0");
    if (sp.velocity_override && !(*sp.velocity_override > 0.0))
      throw std::invalid_argument("scenario: velocity override must be > 0");
  }
  if (!(grating_separation > 0.0))
    throw std::invalid_argument("scenario: grating separation must be > 0");
  for (const auto& gr : gratings) gr.validate();
  if (gratings[1].period != gratings[0].period || gratings[2].period != gratings[0].period)
    throw std::invalid_argument("scenario: the three gratings must share one period");
  beam.validate(gratings[0].period);
  field.validate();
  if (std::abs(field.total_length - 2.0 * grating_separation) > 1e-9 * grating_separation)
    throw std::invalid_argument("scenario: deflector total length must equal 2L");
  if (samples_per_offset <= 0) throw std::invalid_argument("scenario: samples must be > 0");
  if (offsets_per_period < 4) throw std::invalid_argument("scenario: need at least 4 offsets");
}

std::uint64_t Scenario::hash() const {
  std::string blob;
  for (const auto& sp : species) {
    blob += sp.species.name;
    blob += ';';
    append_number(blob, sp.species.mass);
    append_number(blob, sp.species.alpha_parallel);
    append_number(blob, sp.species.alpha_perp);
    append_number(blob, sp.species.dipole_moment);
    append_number(blob, sp.species.temperature);
    append_number(blob, sp.weight);
    append_number(blob, sp.velocity_override.value_or(-1.0));
  }
  append_number(blob, beam.mean_velocity);
  append_number(blob, beam.relative_spread);
  blob += beam.spread_convention == SpreadConvention::kFwhm ? "fwhm;" : "sigma;";
  blob += beam.distribution == VelocityDistribution::kGaussian ? "gauss;" : "thermal;";
  append_number(blob, beam.transverse_extent);
  append_number(blob, beam.divergence);
  for (const auto& gr : gratings) {
    append_number(blob, gr.period);
    append_number(blob, gr.open_fraction);
    append_number(blob, gr.thickness);
    blob += gr.cp_enabled ? "cp;" : "nocp;";
    append_number(blob, gr.r_min);
  }
  append_number(blob, field.voltage);
  append_number(blob, field.calibration);
  append_number(blob, field.region_start);
  append_number(blob, field.region_length);
  append_number(blob, grating_separation);
  blob += orientation_mode_name(orientation);
  append_number(blob, static_cast<double>(samples_per_offset));
  append_number(blob, static_cast<double>(offsets_per_period));
  append_number(blob, static_cast<double>(seed));
  return fnv1a(blob);
}

FringeScan run_scan_offsets(const Scenario& scenario, std::size_t species_index,
                            std::span<const double> offsets, int workers) {
  scenario.validate();
  if (species_index >= scenario.species.size())
    throw std::invalid_argument("run_scan: species index out of range");
  if (offsets.empty()) throw std::invalid_argument("run_scan: empty offset grid");

  const ScenarioSpecies& sp = scenario.species[species_index];
  const Species& species = sp.species;
  const BeamModel beam = beam_for(scenario, sp);
  const double L = scenario.grating_separation;
  const double dip = dipole_term(species);
  const double y0 = scenario.field.region_start;
  const double y1 = scenario.field.region_start + scenario.field.region_length;
  const std::uint64_t stream_base = fnv1a(species.name);
  const long total = scenario.samples_per_offset;
  const std::size_t n_off = offsets.size();

  std::vector<long> hits(n_off, 0);
  std::mutex merge_lock;

  parallel_for(static_cast<std::size_t>(total), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<long> local(n_off, 0);
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng(scenario.seed, stream_base ^ static_cast<std::uint64_t>(i));
      double v_y = sample_velocity(beam, rng);
      BeamEntry entry = sample_entry(beam, rng);
      double c2t = sample_cos2theta(scenario.orientation, rng);
      double chi = effective_alpha(species, c2t) + dip;
      double accel = stark_acceleration(chi, species.mass, scenario.field);

      double x = entry.x;
      double v_x = v_y * std::tan(entry.angle);

      auto exit1 = transmit(x, v_x, v_y, chi, species.mass, scenario.gratings[0]);
      if (!exit1) continue;
      x = exit1->x;
      v_x = exit1->v_x;
      propagate(x, v_x, 0.0, L, v_y, accel, y0, y1);

      auto exit2 = transmit(x, v_x, v_y, chi, species.mass, scenario.gratings[1]);
      if (!exit2) continue;
      x = exit2->x;
      v_x = exit2->v_x;
      propagate(x, v_x, L, 2.0 * L, v_y, accel, y0, y1);

      for (std::size_t j = 0; j < n_off; ++j) {
        if (transmit(x - offsets[j], v_x, v_y, chi, species.mass, scenario.gratings[2]))
          ++local[j];
      }
    }
    std::scoped_lock lock(merge_lock);
    for (std::size_t j = 0; j < n_off; ++j) hits[j] += local[j];
  });

  FringeScan scan;
  scan.species = species.name;
  scan.period = scenario.gratings[0].period;
  scan.offsets.assign(offsets.begin(), offsets.end());
  scan.signal.resize(n_off);
  scan.std_error.resize(n_off);
  scan.attempted = total;
  scan.seed = scenario.seed;
  scan.scenario_hash = scenario.hash();
  for (std::size_t j = 0; j < n_off; ++j) {
    double p = static_cast<double>(hits[j]) / static_cast<double>(total);
    scan.signal[j] = p;
    scan.std_error[j] = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(total));
  }
  return scan;
}

std::vector<FringeScan> run_scan(const Scenario& scenario, int workers) {
  scenario.validate();
  std::vector<double> offsets(scenario.offsets_per_period);
  double g = scenario.gratings[0].period;
  for (int j = 0; j < scenario.offsets_per_period; ++j)
    offsets[j] = g * j / scenario.offsets_per_period;
  std::vector<FringeScan> scans;
  scans.reserve(scenario.species.size());
  for (std::size_t s = 0; s < scenario.species.size(); ++s)
    scans.push_back(run_scan_offsets(scenario, s, offsets, workers));
  return scans;
}

// ---------------------------------------------------------------------------
// Analytic shadow oracle

namespace {

// Measure of {x in [0,g): |wrap(x)|<=h1 and |wrap(x+a)|<=h2 and |wrap(x+b)|<=h3},
// i.e. the intersection length of three arcs centered at 0, -a, -b.
double arc_overlap3(double a, double b, double h1, double h2, double h3, double g) {
  double centers[3] = {0.0, -a, -b};
  double halves[3] = {h1, h2, h3};
  double bounds[6];
  for (int i = 0; i < 3; ++i) {
    double lo = centers[i] - halves[i];
    double hi = centers[i] + halves[i];
    bounds[2 * i] = lo - g * std::floor(lo / g);
    bounds[2 * i + 1] = hi - g * std::floor(hi / g);
  }
  std::sort(bounds, bounds + 6);
  auto inside = [&](double x, int i) {
    double d = x - centers[i];
    d -= g * std::floor(d / g + 0.5);
    return std::abs(d) <= halves[i];
  };
  double len = 0.0;
  for (int s = 0; s < 6; ++s) {
    double lo = bounds[s];
    double hi = (s + 1 < 6) ? bounds[s + 1] : bounds[0] + g;
    if (hi <= lo) continue;
    double mid = 0.5 * (lo + hi);
    if (inside(mid, 0) && inside(mid, 1) && inside(mid, 2)) len += hi - lo;
  }
  return len;
}

}  // namespace

ShadowOracle::ShadowOracle(const std::array<GratingSpec, 3>& gratings, int grid, int slope_nodes) {
  period_ = gratings[0].period;
  if (gratings[1].period != period_ || gratings[2].period != period_)
    throw std::invalid_argument("shadow oracle: gratings must share one period");
  const double g = period_;
  const double h1 = 0.5 * gratings[0].slit_width();
  const double h2 = 0.5 * gratings[1].slit_width();
  const double h3 = 0.5 * gratings[2].slit_width();
  base_.assign(grid, 0.0);
  parallel_for(static_cast<std::size_t>(grid), 0, [&](std::size_t begin, std::size_t end) {
    for (std::size_t iy = begin; iy < end; ++iy) {
      double y = g * static_cast<double>(iy) / grid;
      double acc = 0.0;
      for (int id = 0; id < slope_nodes; ++id) {
        double delta = g * (id + 0.5) / slope_nodes;
        acc += arc_overlap3(delta, 2.0 * delta - y, h1, h2, h3, g);
      }
      base_[iy] = acc / (static_cast<double>(slope_nodes) * g);
    }
  });
}

double ShadowOracle::base_signal(double y) const {
  double t = y / period_;
  t -= std::floor(t);
  double pos = t * base_.size();
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= base_.size()) i = base_.size() - 1;
  double frac = pos - static_cast<double>(i);
  double a = base_[i];
  double b = base_[(i + 1) % base_.size()];
  return a + (b - a) * frac;
}

FringeScan analytic_scan_offsets(const Scenario& scenario, std::size_t species_index,
                                 std::span<const double> offsets) {
  ShadowOracle oracle(scenario.gratings);
  return analytic_scan_offsets(scenario, species_index, offsets, oracle);
}

FringeScan analytic_scan_offsets(const Scenario& scenario, std::size_t species_index,
                                 std::span<const double> offsets, const ShadowOracle& oracle) {
  scenario.validate();
  if (scenario.cp_enabled())
    throw std::invalid_argument("analytic_scan: requires CP disabled on all gratings");
  if (species_index >= scenario.species.size())
    throw std::invalid_argument("analytic_scan: species index out of range");
  const ScenarioSpecies& sp = scenario.species[species_index];
  if (scenario.orientation != OrientationMode::kAligned &&
      sp.species.kind != PolarizabilityKind::kIsotropic)
    throw std::invalid_argument(
        "analytic_scan: anisotropic species need the aligned orientation mode");

  const BeamModel beam = beam_for(scenario, sp);
  double chi = effective_alpha(sp.species, 1.0) + dipole_term(sp.species);
  VelocityQuadrature quad = velocity_quadrature(beam);

  FringeScan scan;
  scan.species = sp.species.name;
  scan.period = scenario.gratings[0].period;
  scan.offsets.assign(offsets.begin(), offsets.end());
  scan.signal.resize(offsets.size(), 0.0);
  scan.std_error.resize(offsets.size(), 0.0);
  scan.attempted = 0;
  scan.seed = scenario.seed;
  scan.scenario_hash = scenario.hash();
  for (std::size_t k = 0; k < quad.nodes.size(); ++k) {
    double shift = pattern_shift(chi, sp.species.mass, scenario.field, quad.nodes[k]);
    for (std::size_t j = 0; j < offsets.size(); ++j)
      scan.signal[j] += quad.weights[k] * oracle.base_signal(offsets[j] - shift);
  }
  return scan;
}

std::vector<FringeScan> analytic_scan(const Scenario& scenario) {
  scenario.validate();
  std::vector<double> offsets(scenario.offsets_per_period);
  double g = scenario.gratings[0].period;
  for (int j = 0; j < scenario.offsets_per_period; ++j)
    offsets[j] = g * j / scenario.offsets_per_period;
  ShadowOracle oracle(scenario.gratings);
  std::vector<FringeScan> scans;
  scans.reserve(scenario.species.size());
  for (std::size_t s = 0; s < scenario.species.size(); ++s)
    scans.push_back(analytic_scan_offsets(scenario, s, offsets, oracle));
  return scans;
}

std::vector<double> mixture_signal(std::span<const FringeScan> scans,
                                   std::span<const double> weights) {
  if (scans.empty() || scans.size() != weights.size())
    throw std::invalid_argument("mixture_signal: need one weight per scan");
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> mix(scans[0].signal.size(), 0.0);
  for (std::size_t s = 0; s < scans.size(); ++s) {
    if (scans[s].signal.size() != mix.size())
      throw std::invalid_argument("mixture_signal: scans must share one offset grid");
    for (std::size_t j = 0; j < mix.size(); ++j)
      mix[j] += weights[s] / total * scans[s].signal[j];
  }
  return mix;
}

}  // namespace moire
