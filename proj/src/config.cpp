#include "tableturn/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "tableturn/format.hpp"

namespace tableturn {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

double parse_double(const std::string& value, const std::string& key,
                    std::size_t line) {
  try {
    std::size_t consumed = 0;
    const double x = std::stod(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing text");
    if (!std::isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + value + "'",
                      line);
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key,
                        std::size_t line) {
  try {
    std::size_t consumed = 0;
    const unsigned long long x = std::stoull(value, &consumed);
    if (consumed != value.size()) throw std::invalid_argument("trailing text");
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" +
                          value + "'",
                      line);
  }
}

TurnAngle parse_turn(const std::string& value, const std::string& key,
                     std::size_t line) {
  if (value.find('/') == std::string::npos) {
    throw ConfigError("key '" + key + "': leg angles must be 'p/q' fractions of a "
                          "turn (decimals are not accepted), got '" +
                          value + "'",
                      line);
  }
  try {
    return TurnAngle::parse(value);
  } catch (const std::exception& err) {
    throw ConfigError("key '" + key + "': " + err.what(), line);
  }
}

Bump parse_bump(const std::string& value, std::size_t line) {
  std::istringstream in(value);
  Bump bump{};
  std::string extra;
  if (!(in >> bump.center.x >> bump.center.y >> bump.amplitude >> bump.width) ||
      (in >> extra)) {
    throw ConfigError("key 'bump': expected 'cx cy amplitude width', got '" +
                          value + "'",
                      line);
  }
  if (bump.width <= 0.0) {
    throw ConfigError("key 'bump': width must be positive", line);
  }
  return bump;
}

struct RawEntry {
  std::string value;
  std::size_t line = 0;
};

using Section = std::multimap<std::string, RawEntry>;

// All keys each section accepts; anything else is rejected with its line.
const std::map<std::string, std::set<std::string>> kSchema = {
    {"geometry", {"radius", "theta_b", "theta_c", "theta_d"}},
    {"terrain",
     {"kind", "height", "a", "b", "c", "bump", "path", "seed", "n_bumps",
      "max_amplitude", "min_width", "extent"}},
    {"solver", {"n", "tol", "theta0", "ergodic_n", "eps"}},
    {"output", {"directory", "formats"}},
};

// Keys meaningful for each terrain kind (beyond 'kind' itself).
const std::map<TerrainKind, std::set<std::string>> kTerrainKeys = {
    {TerrainKind::flat, {"height"}},
    {TerrainKind::affine, {"a", "b", "c"}},
    {TerrainKind::bumps, {"bump"}},
    {TerrainKind::heightmap, {"path"}},
    {TerrainKind::random,
     {"seed", "n_bumps", "max_amplitude", "min_width", "extent"}},
};

class SectionReader {
 public:
  SectionReader(const Section& section, std::string name)
      : section_(section), name_(std::move(name)) {}

  bool has(const std::string& key) const { return section_.count(key) > 0; }

  const RawEntry& get(const std::string& key) const {
    const auto it = section_.find(key);
    if (it == section_.end()) {
      throw ConfigError("section [" + name_ + "] is missing required key '" + key +
                        "'");
    }
    if (section_.count(key) > 1) {
      throw ConfigError("section [" + name_ + "] repeats key '" + key + "'",
                        std::next(it)->second.line);
    }
    return it->second;
  }

  const RawEntry* find(const std::string& key) const {
    if (!has(key)) return nullptr;
    return &get(key);
  }

 private:
  const Section& section_;
  std::string name_;
};

}  // namespace

ConfigError::ConfigError(const std::string& message, std::size_t line)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " +
                                        message
                                  : "config: " + message),
      line_(line) {}

std::string to_string(TerrainKind kind) {
  switch (kind) {
    case TerrainKind::flat: return "flat";
    case TerrainKind::affine: return "affine";
    case TerrainKind::bumps: return "bumps";
    case TerrainKind::heightmap: return "heightmap";
    case TerrainKind::random: return "random";
  }
  throw std::logic_error("unknown terrain kind");
}

TerrainKind terrain_kind_from_string(const std::string& text) {
  if (text == "flat") return TerrainKind::flat;
  if (text == "affine") return TerrainKind::affine;
  if (text == "bumps") return TerrainKind::bumps;
  if (text == "heightmap") return TerrainKind::heightmap;
  if (text == "random") return TerrainKind::random;
  throw std::invalid_argument("unknown terrain kind '" + text + "'");
}

ExperimentConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::string current;

  std::istringstream in(text);
  std::string raw_line;
  std::size_t line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::size_t hash = raw_line.find('#');
    if (hash != std::string::npos) raw_line.erase(hash);
    const std::string line = trim(raw_line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header '" + line + "'", line_no);
      }
      current = trim(line.substr(1, line.size() - 2));
      if (kSchema.find(current) == kSchema.end()) {
        throw ConfigError("unknown section [" + current + "]", line_no);
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
    }
    if (current.empty()) {
      throw ConfigError("key outside any section: '" + line + "'", line_no);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    const auto& allowed = kSchema.at(current);
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in section [" + current + "]",
                        line_no);
    }
    sections[current].insert({key, RawEntry{value, line_no}});
  }

  static const Section kEmpty;
  const auto section_of = [&](const std::string& name) -> const Section& {
    const auto it = sections.find(name);
    return it == sections.end() ? kEmpty : it->second;
  };

  ExperimentConfig config;

  {
    SectionReader geometry(section_of("geometry"), "geometry");
    const auto& radius = geometry.get("radius");
    config.geometry.radius = parse_double(radius.value, "radius", radius.line);
    const auto& tb = geometry.get("theta_b");
    config.geometry.theta_b = parse_turn(tb.value, "theta_b", tb.line);
    const auto& tc = geometry.get("theta_c");
    config.geometry.theta_c = parse_turn(tc.value, "theta_c", tc.line);
    const auto& td = geometry.get("theta_d");
    config.geometry.theta_d = parse_turn(td.value, "theta_d", td.line);
    if (config.geometry.radius <= 0.0) {
      throw ConfigError("key 'radius': must be positive", radius.line);
    }
  }

  {
    const Section& raw = section_of("terrain");
    SectionReader terrain(raw, "terrain");
    const auto& kind_entry = terrain.get("kind");
    try {
      config.terrain.kind = terrain_kind_from_string(kind_entry.value);
    } catch (const std::exception& err) {
      throw ConfigError(err.what(), kind_entry.line);
    }
    const auto& meaningful = kTerrainKeys.at(config.terrain.kind);
    for (const auto& [key, entry] : raw) {
      if (key != "kind" && meaningful.find(key) == meaningful.end()) {
        throw ConfigError("key '" + key + "' does not apply to terrain kind '" +
                              to_string(config.terrain.kind) + "'",
                          entry.line);
      }
    }
    switch (config.terrain.kind) {
      case TerrainKind::flat:
        if (const auto* e = terrain.find("height")) {
          config.terrain.height = parse_double(e->value, "height", e->line);
        }
        break;
      case TerrainKind::affine:
        if (const auto* e = terrain.find("a")) {
          config.terrain.a = parse_double(e->value, "a", e->line);
        }
        if (const auto* e = terrain.find("b")) {
          config.terrain.b = parse_double(e->value, "b", e->line);
        }
        if (const auto* e = terrain.find("c")) {
          config.terrain.c = parse_double(e->value, "c", e->line);
        }
        break;
      case TerrainKind::bumps: {
        const auto range = raw.equal_range("bump");
        for (auto it = range.first; it != range.second; ++it) {
          config.terrain.bumps.push_back(parse_bump(it->second.value, it->second.line));
        }
        if (config.terrain.bumps.empty()) {
          throw ConfigError("terrain kind 'bumps' needs at least one 'bump' entry");
        }
        break;
      }
      case TerrainKind::heightmap: {
        const auto& e = terrain.get("path");
        if (e.value.empty()) throw ConfigError("key 'path': must not be empty", e.line);
        config.terrain.path = e.value;
        break;
      }
      case TerrainKind::random:
        if (const auto* e = terrain.find("seed")) {
          config.terrain.seed = parse_u64(e->value, "seed", e->line);
        }
        if (const auto* e = terrain.find("n_bumps")) {
          config.terrain.n_bumps =
              static_cast<std::size_t>(parse_u64(e->value, "n_bumps", e->line));
        }
        if (const auto* e = terrain.find("max_amplitude")) {
          config.terrain.max_amplitude =
              parse_double(e->value, "max_amplitude", e->line);
          if (config.terrain.max_amplitude < 0.0) {
            throw ConfigError("key 'max_amplitude': must be non-negative", e->line);
          }
        }
        if (const auto* e = terrain.find("min_width")) {
          config.terrain.min_width = parse_double(e->value, "min_width", e->line);
          if (config.terrain.min_width <= 0.0) {
            throw ConfigError("key 'min_width': must be positive", e->line);
          }
        }
        if (const auto* e = terrain.find("extent")) {
          config.terrain.extent = parse_double(e->value, "extent", e->line);
          if (config.terrain.extent <= 0.0) {
            throw ConfigError("key 'extent': must be positive", e->line);
          }
        }
        break;
    }
  }

  {
    SectionReader solver(section_of("solver"), "solver");
    if (const auto* e = solver.find("n")) {
      config.solver.n = static_cast<std::size_t>(parse_u64(e->value, "n", e->line));
      if (config.solver.n < 8) {
        throw ConfigError("key 'n': must be at least 8", e->line);
      }
    }
    if (const auto* e = solver.find("tol")) {
      config.solver.tol = parse_double(e->value, "tol", e->line);
      if (config.solver.tol <= 0.0) {
        throw ConfigError("key 'tol': must be positive", e->line);
      }
    }
    if (const auto* e = solver.find("theta0")) {
      try {
        resolve_theta0(e->value);
      } catch (const std::exception& err) {
        throw ConfigError(std::string("key 'theta0': ") + err.what(), e->line);
      }
      // Normalize now so serialization is canonical.
      if (e->value == "golden") {
        config.solver.theta0 = "golden";
      } else if (e->value.find('/') != std::string::npos) {
        config.solver.theta0 = TurnAngle::parse(e->value).to_string();
      } else {
        config.solver.theta0 = fmt_g17(parse_double(e->value, "theta0", e->line));
      }
    }
    if (const auto* e = solver.find("ergodic_n")) {
      config.solver.ergodic_n =
          static_cast<std::size_t>(parse_u64(e->value, "ergodic_n", e->line));
      if (config.solver.ergodic_n == 0) {
        throw ConfigError("key 'ergodic_n': must be positive", e->line);
      }
    }
    if (const auto* e = solver.find("eps")) {
      config.solver.eps = parse_double(e->value, "eps", e->line);
      if (config.solver.eps <= 0.0) {
        throw ConfigError("key 'eps': must be positive", e->line);
      }
    }
  }

  {
    SectionReader output(section_of("output"), "output");
    if (const auto* e = output.find("directory")) {
      config.output.directory = e->value;
    }
    if (const auto* e = output.find("formats")) {
      std::istringstream list(e->value);
      std::vector<std::string> formats;
      std::string format;
      while (list >> format) {
        if (format != "csv" && format != "svg") {
          throw ConfigError("key 'formats': unknown format '" + format +
                                "' (expected csv and/or svg)",
                            e->line);
        }
        if (std::find(formats.begin(), formats.end(), format) == formats.end()) {
          formats.push_back(format);
        }
      }
      if (formats.empty()) {
        throw ConfigError("key 'formats': must list at least one format", e->line);
      }
      std::sort(formats.begin(), formats.end());
      config.output.formats = std::move(formats);
    }
  }

  // Geometry invariants beyond per-key checks.
  try {
    build_geometry(config.geometry);
  } catch (const std::exception& err) {
    throw ConfigError(std::string("geometry: ") + err.what());
  }

  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[geometry]\n";
  out << "radius = " << fmt_g17(config.geometry.radius) << '\n';
  out << "theta_b = " << config.geometry.theta_b.to_string() << '\n';
  out << "theta_c = " << config.geometry.theta_c.to_string() << '\n';
  out << "theta_d = " << config.geometry.theta_d.to_string() << '\n';
  out << '\n';

  out << "[terrain]\n";
  out << "kind = " << to_string(config.terrain.kind) << '\n';
  switch (config.terrain.kind) {
    case TerrainKind::flat:
      out << "height = " << fmt_g17(config.terrain.height) << '\n';
      break;
    case TerrainKind::affine:
      out << "a = " << fmt_g17(config.terrain.a) << '\n';
      out << "b = " << fmt_g17(config.terrain.b) << '\n';
      out << "c = " << fmt_g17(config.terrain.c) << '\n';
      break;
    case TerrainKind::bumps:
      for (const auto& bump : config.terrain.bumps) {
        out << "bump = " << fmt_g17(bump.center.x) << ' ' << fmt_g17(bump.center.y)
            << ' ' << fmt_g17(bump.amplitude) << ' ' << fmt_g17(bump.width) << '\n';
      }
      break;
    case TerrainKind::heightmap:
      out << "path = " << config.terrain.path << '\n';
      break;
    case TerrainKind::random:
      out << "seed = " << config.terrain.seed << '\n';
      out << "n_bumps = " << config.terrain.n_bumps << '\n';
      out << "max_amplitude = " << fmt_g17(config.terrain.max_amplitude) << '\n';
      out << "min_width = " << fmt_g17(config.terrain.min_width) << '\n';
      out << "extent = " << fmt_g17(config.terrain.extent) << '\n';
      break;
  }
  out << '\n';

  out << "[solver]\n";
  out << "n = " << config.solver.n << '\n';
  out << "tol = " << fmt_g17(config.solver.tol) << '\n';
  out << "theta0 = " << config.solver.theta0 << '\n';
  out << "ergodic_n = " << config.solver.ergodic_n << '\n';
  out << "eps = " << fmt_g17(config.solver.eps) << '\n';
  out << '\n';

  out << "[output]\n";
  if (!config.output.directory.empty()) {
    out << "directory = " << config.output.directory << '\n';
  }
  out << "formats =";
  for (const auto& format : config.output.formats) out << ' ' << format;
  out << '\n';
  return out.str();
}

TableGeometry build_geometry(const GeometryConfig& config) {
  return TableGeometry(config.radius, config.theta_b, config.theta_c,
                       config.theta_d);
}

std::unique_ptr<Terrain> build_terrain(const TerrainConfig& config) {
  switch (config.kind) {
    case TerrainKind::flat:
      return std::make_unique<FlatTerrain>(config.height);
    case TerrainKind::affine:
      return std::make_unique<AffineTerrain>(config.a, config.b, config.c);
    case TerrainKind::bumps:
      return std::make_unique<BumpFieldTerrain>(config.bumps);
    case TerrainKind::heightmap:
      return load_heightmap(config.path);
    case TerrainKind::random:
      return random_terrain(config.seed, config.n_bumps, config.max_amplitude,
                            config.min_width, config.extent);
  }
  throw std::logic_error("unknown terrain kind");
}

SamplingScheme resolve_theta0(const std::string& text) {
  if (text == "golden") return IrrationalRotation{golden_angle()};
  if (text.find('/') != std::string::npos) {
    return FiniteOrbit{TurnAngle::parse(text), 0.0};
  }
  std::size_t consumed = 0;
  double radians = 0.0;
  try {
    radians = std::stod(text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected 'golden', a 'p/q' turn fraction, or a "
                                "decimal radian value; got '" +
                                text + "'");
  }
  if (consumed != text.size() || !std::isfinite(radians) || radians <= 0.0) {
    throw std::invalid_argument("expected 'golden', a 'p/q' turn fraction, or a "
                                "positive decimal radian value; got '" +
                                text + "'");
  }
  return IrrationalRotation{radians};
}

}  // namespace tableturn
