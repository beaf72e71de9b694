#include "tableturn/terrain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tableturn/format.hpp"

namespace tableturn {

std::string FlatTerrain::describe() const {
  return "flat(c=" + fmt_g(height_) + ")";
}

std::string AffineTerrain::describe() const {
  return "affine(a=" + fmt_g(a_) + ",b=" + fmt_g(b_) + ",c=" + fmt_g(c_) + ")";
}

BumpFieldTerrain::BumpFieldTerrain(std::vector<Bump> bumps)
    : bumps_(std::move(bumps)) {
  double l = 0.0;
  for (const auto& bump : bumps_) {
    if (!(bump.width > 0.0)) {
      throw std::invalid_argument("BumpFieldTerrain: width must be positive");
    }
    // A single Gaussian bump has max slope |a| exp(-1/2) / width at r = width.
    l += std::abs(bump.amplitude) * std::exp(-0.5) / bump.width;
  }
  lipschitz_ = l;
}

double BumpFieldTerrain::height_at(double x, double y) const {
  double z = 0.0;
  for (const auto& bump : bumps_) {
    const double ddx = x - bump.center.x;
    const double ddy = y - bump.center.y;
    const double r2 = ddx * ddx + ddy * ddy;
    z += bump.amplitude * std::exp(-r2 / (2.0 * bump.width * bump.width));
  }
  return z;
}

std::string BumpFieldTerrain::describe() const {
  return "bumps(n=" + std::to_string(bumps_.size()) + ")";
}

HeightmapTerrain::HeightmapTerrain(std::size_t nx, std::size_t ny, double x0,
                                   double y0, double dx, double dy,
                                   std::vector<double> values)
    : nx_(nx), ny_(ny), x0_(x0), y0_(y0), dx_(dx), dy_(dy),
      values_(std::move(values)) {
  if (nx_ < 2 || ny_ < 2) {
    throw std::invalid_argument("HeightmapTerrain: grid must be at least 2x2");
  }
  if (!(dx_ > 0.0) || !(dy_ > 0.0)) {
    throw std::invalid_argument("HeightmapTerrain: spacing must be positive");
  }
  if (values_.size() != nx_ * ny_) {
    throw std::invalid_argument("HeightmapTerrain: value count mismatch");
  }
  // Per-cell bilinear gradient bound: the x-slope is a convex blend of the
  // two edge slopes, likewise in y, so the cell max is attained at edges.
  double l2 = 0.0;
  for (std::size_t iy = 0; iy + 1 < ny_; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx_; ++ix) {
      const double z00 = values_[iy * nx_ + ix];
      const double z10 = values_[iy * nx_ + ix + 1];
      const double z01 = values_[(iy + 1) * nx_ + ix];
      const double z11 = values_[(iy + 1) * nx_ + ix + 1];
      const double gx =
          std::max(std::abs(z10 - z00), std::abs(z11 - z01)) / dx_;
      const double gy =
          std::max(std::abs(z01 - z00), std::abs(z11 - z10)) / dy_;
      l2 = std::max(l2, gx * gx + gy * gy);
    }
  }
  lipschitz_ = std::sqrt(l2);
}

double HeightmapTerrain::height_at(double x, double y) const {
  const double xmax = x0_ + static_cast<double>(nx_ - 1) * dx_;
  const double ymax = y0_ + static_cast<double>(ny_ - 1) * dy_;
  if (x < x0_ || x > xmax || y < y0_ || y > ymax) {
    throw std::domain_error(
        "heightmap query outside grid bounds; terrain too small for the leg "
        "circle");
  }
  const double u = (x - x0_) / dx_;
  const double v = (y - y0_) / dy_;
  std::size_t ix = std::min(static_cast<std::size_t>(u), nx_ - 2);
  std::size_t iy = std::min(static_cast<std::size_t>(v), ny_ - 2);
  const double fu = u - static_cast<double>(ix);
  const double fv = v - static_cast<double>(iy);
  const double z00 = values_[iy * nx_ + ix];
  const double z10 = values_[iy * nx_ + ix + 1];
  const double z01 = values_[(iy + 1) * nx_ + ix];
  const double z11 = values_[(iy + 1) * nx_ + ix + 1];
  const double bottom = z00 + fu * (z10 - z00);
  const double top = z01 + fu * (z11 - z01);
  return bottom + fv * (top - bottom);
}

bool HeightmapTerrain::domain_contains_circle(Vec2 center,
                                              double radius) const {
  const double xmax = x0_ + static_cast<double>(nx_ - 1) * dx_;
  const double ymax = y0_ + static_cast<double>(ny_ - 1) * dy_;
  return center.x - radius >= x0_ && center.x + radius <= xmax &&
         center.y - radius >= y0_ && center.y + radius <= ymax;
}

std::string HeightmapTerrain::describe() const {
  return "heightmap(" + std::to_string(nx_) + "x" + std::to_string(ny_) + ")";
}

std::unique_ptr<Terrain> random_terrain(std::uint64_t seed, int n_bumps,
                                        double max_amplitude, double min_width,
                                        double extent) {
  if (n_bumps < 0) {
    throw std::invalid_argument("random_terrain: n_bumps must be >= 0");
  }
  if (!(min_width > 0.0)) {
    throw std::invalid_argument("random_terrain: min_width must be positive");
  }
  if (n_bumps == 0) {
    return std::make_unique<FlatTerrain>(0.0);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> center_dist(-extent, extent);
  std::uniform_real_distribution<double> amp_dist(-max_amplitude,
                                                  max_amplitude);
  std::uniform_real_distribution<double> width_dist(min_width,
                                                    2.0 * min_width);
  std::vector<Bump> bumps;
  bumps.reserve(static_cast<std::size_t>(n_bumps));
  for (int i = 0; i < n_bumps; ++i) {
    Bump bump;
    bump.center.x = center_dist(rng);
    bump.center.y = center_dist(rng);
    bump.amplitude = amp_dist(rng);
    bump.width = width_dist(rng);
    bumps.push_back(bump);
  }
  return std::make_unique<BumpFieldTerrain>(std::move(bumps));
}

std::unique_ptr<HeightmapTerrain> load_heightmap(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open heightmap file: " + path);
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("heightmap file is empty: " + path);
  }
  std::istringstream hs(header);
  long long nx = 0, ny = 0;
  double x0 = 0, y0 = 0, dx = 0, dy = 0;
  if (!(hs >> nx >> ny >> x0 >> y0 >> dx >> dy) || nx < 2 || ny < 2) {
    throw std::runtime_error("malformed heightmap header: \"" + header + "\"");
  }
  std::string trailing;
  if (hs >> trailing) {
    throw std::runtime_error("malformed heightmap header: \"" + header + "\"");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(nx * ny));
  std::string line;
  for (long long iy = 0; iy < ny; ++iy) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("heightmap row count mismatch: expected " +
                               std::to_string(ny) + " rows");
    }
    std::istringstream ls(line);
    for (long long ix = 0; ix < nx; ++ix) {
      std::string cell;
      if (!(ls >> cell)) {
        throw std::runtime_error("heightmap row " + std::to_string(iy) +
                                 " has fewer than " + std::to_string(nx) +
                                 " cells");
      }
      std::size_t pos = 0;
      double z;
      try {
        z = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric heightmap cell: \"" + cell +
                                 "\"");
      }
      if (pos != cell.size()) {
        throw std::runtime_error("non-numeric heightmap cell: \"" + cell +
                                 "\"");
      }
      values.push_back(z);
    }
    std::string extra;
    if (ls >> extra) {
      throw std::runtime_error("heightmap row " + std::to_string(iy) +
                               " has more than " + std::to_string(nx) +
                               " cells");
    }
  }
  return std::make_unique<HeightmapTerrain>(
      static_cast<std::size_t>(nx), static_cast<std::size_t>(ny), x0, y0, dx,
      dy, std::move(values));
}

void save_heightmap(const HeightmapTerrain& terrain, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write heightmap file: " + path);
  }
  out << terrain.nx() << " " << terrain.ny() << " " << fmt_g17(terrain.x0())
      << " " << fmt_g17(terrain.y0()) << " " << fmt_g17(terrain.dx()) << " "
      << fmt_g17(terrain.dy()) << "\n";
  const auto& values = terrain.values();
  for (std::size_t iy = 0; iy < terrain.ny(); ++iy) {
    for (std::size_t ix = 0; ix < terrain.nx(); ++ix) {
      if (ix) out << " ";
      out << fmt_g17(values[iy * terrain.nx() + ix]);
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed for heightmap file: " + path);
  }
}

CircleProfile::CircleProfile(const Terrain& source, Vec2 center, double radius)
    : source_(&source), center_(center), radius_(radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("CircleProfile: radius must be positive");
  }
  if (!source.domain_contains_circle(center, radius)) {
    throw std::domain_error(
        "leg circle does not fit inside the terrain domain");
  }
}

CircleProfile circle_profile(const Terrain& terrain, Vec2 center,
                             double radius) {
  return CircleProfile(terrain, center, radius);
}

}  // namespace tableturn
