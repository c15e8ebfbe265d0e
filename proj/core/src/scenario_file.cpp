#include "moire/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "moire/units.hpp"

namespace moire {

namespace {

using units::Dimension;

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;
  bool used = false;
};

struct Section {
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
  bool used = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

class Document {
 public:
  std::vector<Section> sections;

  Section* find(std::string_view name) {
    for (auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }

  Section& get_or_add(std::string_view name) {
    if (Section* s = find(name)) return *s;
    sections.push_back(Section{std::string(name)});
    return sections.back();
  }
};

Document tokenize(std::string_view text) {
  Document doc;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    std::size_t hash = raw.find('#');
    std::string_view body = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (!body.empty()) {
      if (body.front() == '[') {
        if (body.back() != ']')
          throw ScenarioParseError("unterminated section header", line_no, 1);
        std::string name(trim(body.substr(1, body.size() - 2)));
        if (name.empty()) throw ScenarioParseError("empty section name", line_no, 1);
        Section& s = doc.get_or_add(name);
        if (s.line == 0) s.line = line_no;
        current = doc.find(name);
      } else {
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
          throw ScenarioParseError("expected 'key = value'", line_no, 1);
        if (!current)
          throw ScenarioParseError("entry before any [section] header", line_no, 1);
        std::string key(trim(body.substr(0, eq)));
        std::string_view value = trim(body.substr(eq + 1));
        if (key.empty()) throw ScenarioParseError("empty key", line_no, 1);
        int col = static_cast<int>(raw.find(key.front()) + 1);
        if (current->entries.count(key))
          throw ScenarioParseError("duplicate key '" + key + "' in [" + current->name + "]",
                                   line_no, col);
        current->entries[key] = Entry{std::string(value), line_no, col};
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return doc;
}

[[noreturn]] void fail(const Entry& e, const std::string& msg) {
  throw ScenarioParseError(msg, e.line, e.column);
}

double parse_quantity(const Entry& e, Dimension dim, const std::string& section,
                      const std::string& key) {
  const char* begin = e.value.c_str();
  char* num_end = nullptr;
  double value = std::strtod(begin, &num_end);
  if (num_end == begin) fail(e, "[" + section + "] " + key + ": expected a number");
  std::string unit(trim(std::string_view(num_end)));
  if (unit.empty()) {
    if (dim == Dimension::kDimensionless) return value;
    fail(e, "[" + section + "] " + key + ": missing unit suffix (e.g. '" + e.value + " nm')");
  }
  auto def = units::find_unit(unit);
  if (!def) fail(e, "[" + section + "] " + key + ": unknown unit '" + unit + "'");
  if (def->dimension != dim)
    fail(e, "[" + section + "] " + key + ": unit '" + unit + "' is a " +
                units::dimension_name(def->dimension) + ", expected " + units::dimension_name(dim));
  return value * def->to_si;
}

/// Typed access to one section; every read marks the key used, and finish()
/// rejects whatever was never read.
class Reader {
 public:
  Reader(Section* section, std::string name) : section_(section), name_(std::move(name)) {
    if (section_) section_->used = true;
  }

  bool present(const std::string& key) const {
    return section_ && section_->entries.count(key) > 0;
  }

  std::optional<double> quantity(const std::string& key, Dimension dim) {
    Entry* e = take(key);
    if (!e) return std::nullopt;
    return parse_quantity(*e, dim, name_, key);
  }

  double quantity_required(const std::string& key, Dimension dim) {
    auto v = quantity(key, dim);
    if (!v) missing(key);
    return *v;
  }

  std::optional<std::string> text(const std::string& key) {
    Entry* e = take(key);
    if (!e) return std::nullopt;
    return e->value;
  }

  std::optional<bool> boolean(const std::string& key) {
    Entry* e = take(key);
    if (!e) return std::nullopt;
    if (e->value == "true" || e->value == "on" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "off" || e->value == "no") return false;
    fail(*e, "[" + name_ + "] " + key + ": expected true or false");
  }

  std::optional<long> integer(const std::string& key) {
    Entry* e = take(key);
    if (!e) return std::nullopt;
    char* end = nullptr;
    long v = std::strtol(e->value.c_str(), &end, 10);
    if (end == e->value.c_str() || !trim(std::string_view(end)).empty())
      fail(*e, "[" + name_ + "] " + key + ": expected an integer");
    return v;
  }

  Entry* take(const std::string& key) {
    if (!section_) return nullptr;
    auto it = section_->entries.find(key);
    if (it == section_->entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  [[noreturn]] void missing(const std::string& key) const {
    throw ScenarioParseError("missing required key '" + key + "' in section [" + name_ + "]",
                             section_ ? section_->line : 0, 1);
  }

  void finish() const {
    if (!section_) return;
    for (const auto& [key, entry] : section_->entries)
      if (!entry.used)
        throw ScenarioParseError("unknown key '" + key + "' in section [" + name_ + "]",
                                 entry.line, entry.column);
  }

  explicit operator bool() const { return section_ != nullptr; }

 private:
  Section* section_;
  std::string name_;
};

SpreadConvention parse_spread_convention(Reader& r) {
  auto t = r.text("spread_convention");
  if (!t || *t == "fwhm") return SpreadConvention::kFwhm;
  if (*t == "sigma") return SpreadConvention::kSigma;
  throw ScenarioParseError("spread_convention must be fwhm or sigma", 0, 0);
}

VelocityDistribution parse_distribution(Reader& r) {
  auto t = r.text("distribution");
  if (!t || *t == "gaussian") return VelocityDistribution::kGaussian;
  if (*t == "thermal") return VelocityDistribution::kThermal;
  throw ScenarioParseError("distribution must be gaussian or thermal", 0, 0);
}

OrientationMode parse_orientation(const std::string& t) {
  if (t == "aligned") return OrientationMode::kAligned;
  if (t == "static-isotropic") return OrientationMode::kStaticIsotropic;
  if (t == "rotor-averaged") return OrientationMode::kRotorAveraged;
  throw ScenarioParseError(
      "orientation must be aligned, static-isotropic or rotor-averaged", 0, 0);
}

ScenarioSpecies parse_species_section(Section* section, const std::string& name) {
  Reader r(section, "species." + name);
  ScenarioSpecies out;
  if (auto w = r.quantity("weight", Dimension::kDimensionless)) out.weight = *w;
  if (auto v = r.quantity("velocity_mean", Dimension::kVelocity)) out.velocity_override = v;

  if (auto p = r.text("preset")) {
    out.species = preset(*p);
    out.species.name = name;
    r.finish();
    return out;
  }
  if (r.present("chirality")) {
    Entry* e = r.take("chirality");
    std::istringstream is(e->value);
    SwcntSpec spec;
    if (!(is >> spec.n >> spec.m)) fail(*e, "chirality: expected two integers 'n m'");
    spec.length = r.quantity_required("length", Dimension::kLength);
    out.species = swcnt_species(spec);
    out.species.name = name;
    if (auto ap = r.quantity("alpha_par_override", Dimension::kPolarizabilityVolume))
      out.species.alpha_parallel = *ap;
    if (auto ap = r.quantity("alpha_perp_override", Dimension::kPolarizabilityVolume))
      out.species.alpha_perp = *ap;
    r.finish();
    return out;
  }

  out.species.name = name;
  out.species.mass = r.quantity_required("mass", Dimension::kMass);
  if (r.present("chi")) {
    out.species.alpha_parallel = r.quantity_required("chi", Dimension::kPolarizabilityVolume);
    out.species.alpha_perp = out.species.alpha_parallel;
    out.species.kind = PolarizabilityKind::kIsotropic;
  } else {
    out.species.alpha_parallel =
        r.quantity_required("alpha_par", Dimension::kPolarizabilityVolume);
    out.species.alpha_perp = r.quantity_required("alpha_perp", Dimension::kPolarizabilityVolume);
    out.species.kind = PolarizabilityKind::kLinearAnisotropic;
  }
  if (auto d = r.quantity("dipole", Dimension::kDipole)) out.species.dipole_moment = *d;
  if (auto t = r.quantity("temperature", Dimension::kTemperature)) out.species.temperature = *t;
  r.finish();
  return out;
}

GratingSpec parse_grating(Reader& r, const GratingSpec& defaults, bool require_core) {
  GratingSpec g = defaults;
  if (require_core) {
    g.period = r.quantity_required("period", Dimension::kLength);
    g.open_fraction = r.quantity_required("open_fraction", Dimension::kDimensionless);
  } else {
    if (auto v = r.quantity("period", Dimension::kLength)) g.period = *v;
    if (auto v = r.quantity("open_fraction", Dimension::kDimensionless)) g.open_fraction = *v;
  }
  if (auto v = r.quantity("thickness", Dimension::kLength)) g.thickness = *v;
  if (auto v = r.boolean("cp_enabled")) g.cp_enabled = *v;
  if (auto v = r.quantity("r_min", Dimension::kLength)) g.r_min = *v;
  return g;
}

}  // namespace

ScenarioConfig parse_scenario_text(std::string_view text,
                                   std::span<const std::string> overrides) {
  Document doc = tokenize(text);

  for (const std::string& ov : overrides) {
    std::size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw ScenarioParseError("override must look like section.key=value: " + ov, 0, 0);
    std::string path = ov.substr(0, eq);
    std::size_t dot = path.rfind('.');
    if (dot == std::string::npos)
      throw ScenarioParseError("override must look like section.key=value: " + ov, 0, 0);
    Section& s = doc.get_or_add(path.substr(0, dot));
    s.entries[path.substr(dot + 1)] = Entry{std::string(trim(ov.substr(eq + 1))), 0, 0};
  }

  ScenarioConfig cfg;
  Scenario& sc = cfg.scenario;

  // [engine] first: later defaults depend on L.
  Reader engine(doc.find("engine"), "engine");
  if (!engine) throw ScenarioParseError("missing required section [engine]", 0, 0);
  sc.grating_separation = engine.quantity_required("grating_separation", Dimension::kLength);
  if (auto v = engine.integer("samples")) sc.samples_per_offset = static_cast<int>(*v);
  if (auto v = engine.integer("offsets")) sc.offsets_per_period = static_cast<int>(*v);
  if (auto v = engine.integer("seed")) sc.seed = static_cast<std::uint64_t>(*v);
  if (auto v = engine.integer("workers")) cfg.workers = static_cast<int>(*v);
  if (auto t = engine.text("orientation")) sc.orientation = parse_orientation(*t);
  engine.finish();

  Reader gratings(doc.find("gratings"), "gratings");
  if (!gratings) throw ScenarioParseError("missing required section [gratings]", 0, 0);
  GratingSpec shared = parse_grating(gratings, GratingSpec{}, true);
  gratings.finish();
  for (int i = 0; i < 3; ++i) {
    Reader gi(doc.find("gratings." + std::to_string(i + 1)), "gratings." + std::to_string(i + 1));
    sc.gratings[i] = gi ? parse_grating(gi, shared, false) : shared;
    gi.finish();
  }

  Reader beam(doc.find("beam"), "beam");
  if (!beam) throw ScenarioParseError("missing required section [beam]", 0, 0);
  sc.beam.mean_velocity = beam.quantity_required("velocity_mean", Dimension::kVelocity);
  if (auto v = beam.quantity("velocity_spread", Dimension::kDimensionless))
    sc.beam.relative_spread = *v;
  sc.beam.spread_convention = parse_spread_convention(beam);
  sc.beam.distribution = parse_distribution(beam);
  sc.beam.transverse_extent = beam.quantity("transverse_extent", Dimension::kLength)
                                  .value_or(200.0 * shared.period);
  sc.beam.divergence =
      beam.quantity("divergence", Dimension::kAngle)
          .value_or(20.0 * shared.period / sc.grating_separation);
  beam.finish();

  Reader defl(doc.find("deflector"), "deflector");
  sc.field.total_length = 2.0 * sc.grating_separation;
  sc.field.region_start = sc.grating_separation;
  sc.field.region_length = 0.05;
  if (defl) {
    if (auto v = defl.quantity("voltage", Dimension::kVoltage)) sc.field.voltage = *v;
    bool direct = defl.present("calibration");
    bool anchored = defl.present("anchor_voltage") || defl.present("anchor_field");
    if (direct && anchored)
      throw ScenarioParseError("deflector: give either calibration or an anchor pair, not both",
                               doc.find("deflector")->line, 1);
    if (direct) {
      sc.field.calibration = defl.quantity_required("calibration", Dimension::kCalibration);
    } else if (anchored) {
      double au = defl.quantity_required("anchor_voltage", Dimension::kVoltage);
      double af = defl.quantity_required("anchor_field", Dimension::kFieldFactor);
      if (!(au > 0.0))
        throw ScenarioParseError("deflector: anchor_voltage must be > 0",
                                 doc.find("deflector")->line, 1);
      sc.field.calibration = af / (au * au);
    }
    if (auto v = defl.quantity("region_start", Dimension::kLength)) sc.field.region_start = *v;
    if (auto v = defl.quantity("region_length", Dimension::kLength)) sc.field.region_length = *v;
    defl.finish();
  }

  // Species: [species] use-list first, then inline sections in file order.
  Reader species(doc.find("species"), "species");
  std::vector<std::string> use;
  std::vector<double> weights;
  if (species) {
    if (auto t = species.text("use")) use = split_list(*t);
    if (auto t = species.text("weights")) {
      for (const auto& item : split_list(*t)) weights.push_back(std::atof(item.c_str()));
    }
    species.finish();
  }
  for (std::size_t i = 0; i < use.size(); ++i) {
    ScenarioSpecies sp;
    sp.species = preset(use[i]);
    if (i < weights.size()) sp.weight = weights[i];
    sc.species.push_back(std::move(sp));
  }
  if (!use.empty() && !weights.empty() && weights.size() != use.size())
    throw ScenarioParseError("[species] weights must match the use list length",
                             doc.find("species")->line, 1);
  for (Section& s : doc.sections) {
    if (s.name.rfind("species.", 0) == 0) {
      std::string name = s.name.substr(8);
      if (name.empty()) throw ScenarioParseError("empty species name", s.line, 1);
      sc.species.push_back(parse_species_section(&s, name));
    }
  }
  if (sc.species.empty())
    throw ScenarioParseError("no species defined: add [species] use = ... or [species.NAME]", 0, 0);

  Reader analysis(doc.find("analysis"), "analysis");
  if (analysis) {
    if (auto t = analysis.text("target")) cfg.analysis.target = *t;
    if (auto v = analysis.quantity("voltage_min", Dimension::kVoltage))
      cfg.analysis.voltage_min = *v;
    if (auto v = analysis.quantity("voltage_max", Dimension::kVoltage))
      cfg.analysis.voltage_max = *v;
    if (auto v = analysis.integer("voltage_steps"))
      cfg.analysis.voltage_steps = static_cast<int>(*v);
    analysis.finish();
  }

  for (const Section& s : doc.sections)
    if (!s.used)
      throw ScenarioParseError("unknown section [" + s.name + "]", s.line, 1);

  cfg.scenario.validate();
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path,
                                  std::span<const std::string> overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), overrides);
}

}  // namespace moire
