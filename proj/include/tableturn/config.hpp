#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tableturn/ergodic.hpp"
#include "tableturn/geometry.hpp"
#include "tableturn/terrain.hpp"
#include "tableturn/turn_angle.hpp"

namespace tableturn {

struct GeometryConfig {
  double radius = 1.0;
  TurnAngle theta_b;
  TurnAngle theta_c;
  TurnAngle theta_d;
};

enum class TerrainKind { flat, affine, bumps, heightmap, random };

std::string to_string(TerrainKind kind);
TerrainKind terrain_kind_from_string(const std::string& text);

struct TerrainConfig {
  TerrainKind kind = TerrainKind::flat;
  // flat
  double height = 0.0;
  // affine: z = a x + b y + c
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  // bumps: explicit list
  std::vector<Bump> bumps;
  // heightmap: grid file
  std::string path;
  // random: seeded bump field
  std::uint64_t seed = 1;
  std::size_t n_bumps = 8;
  double max_amplitude = 0.05;
  double min_width = 1.0;
  double extent = 2.0;
};

struct SolverConfig {
  std::size_t n = 1024;
  double tol = 1e-9;
  std::string theta0 = "golden";  // "golden" | "p/q" turn | decimal radians
  std::size_t ergodic_n = 100000;
  double eps = 1e-2;
};

struct OutputConfig {
  std::string directory;  // empty = unset; resolution order lives in the CLI
  std::vector<std::string> formats = {"csv"};
};

struct ExperimentConfig {
  GeometryConfig geometry;
  TerrainConfig terrain;
  SolverConfig solver;
  OutputConfig output;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;  // 0 when no single line is to blame
};

/// Parses the sectioned key = value format. '#' starts a comment. Unknown
/// sections and keys are errors, not warnings; missing required keys
/// (geometry radius + the three leg angles, terrain kind) are errors too.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

/// Canonical form: fixed key order, %.17g numbers, normalized fractions.
/// parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

TableGeometry build_geometry(const GeometryConfig& config);
std::unique_ptr<Terrain> build_terrain(const TerrainConfig& config);

/// "golden" -> irrational golden rotation; "p/q" -> finite orbit of the
/// rational rotation; a decimal -> irrational rotation by that many radians.
SamplingScheme resolve_theta0(const std::string& text);

}  // namespace tableturn
