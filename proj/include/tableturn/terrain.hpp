#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tableturn/vec2.hpp"

namespace tableturn {

/// A height field with a computable Lipschitz bound. Implementations must be
/// deterministic (same inputs, bit-identical output) and immutable after
/// construction, so terrains can be shared across threads freely.
class Terrain {
 public:
  virtual ~Terrain() = default;

  virtual double height_at(double x, double y) const = 0;

  /// An upper bound on the gradient norm; |h(p) - h(q)| <= L * |p - q|.
  virtual double lipschitz_bound() const = 0;

  /// Whether the closed disk of the given center/radius lies inside the
  /// terrain's domain. Unbounded families always say yes.
  virtual bool domain_contains_circle(Vec2 center, double radius) const {
    (void)center;
    (void)radius;
    return true;
  }

  virtual std::string describe() const = 0;
};

class FlatTerrain final : public Terrain {
 public:
  explicit FlatTerrain(double height) : height_(height) {}
  double height_at(double, double) const override { return height_; }
  double lipschitz_bound() const override { return 0.0; }
  std::string describe() const override;

 private:
  double height_;
};

/// z = a*x + b*y + c.
class AffineTerrain final : public Terrain {
 public:
  AffineTerrain(double a, double b, double c) : a_(a), b_(b), c_(c) {}
  double height_at(double x, double y) const override {
    return a_ * x + b_ * y + c_;
  }
  double lipschitz_bound() const override { return std::hypot(a_, b_); }
  std::string describe() const override;
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 private:
  double a_, b_, c_;
};

struct Bump {
  Vec2 center;
  double amplitude = 0.0;
  double width = 1.0;  // Gaussian sigma; must be positive
};

/// Sum of smooth radial Gaussian bumps: sum_i amplitude_i *
/// exp(-|p - center_i|^2 / (2 width_i^2)).
class BumpFieldTerrain final : public Terrain {
 public:
  explicit BumpFieldTerrain(std::vector<Bump> bumps);
  double height_at(double x, double y) const override;
  double lipschitz_bound() const override { return lipschitz_; }
  std::string describe() const override;
  const std::vector<Bump>& bumps() const { return bumps_; }

 private:
  std::vector<Bump> bumps_;
  double lipschitz_;
};

/// Regular grid with bilinear interpolation. Queries outside the grid's
/// bounding box throw std::domain_error: extrapolating silently would void
/// the Lipschitz bound.
class HeightmapTerrain final : public Terrain {
 public:
  HeightmapTerrain(std::size_t nx, std::size_t ny, double x0, double y0,
                   double dx, double dy, std::vector<double> values);

  double height_at(double x, double y) const override;
  double lipschitz_bound() const override { return lipschitz_; }
  bool domain_contains_circle(Vec2 center, double radius) const override;
  std::string describe() const override;

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  /// Row-major, y increasing: values[iy * nx + ix].
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t nx_, ny_;
  double x0_, y0_, dx_, dy_;
  std::vector<double> values_;
  double lipschitz_;
};

/// Deterministic bump field: centers uniform in [-extent, extent]^2,
/// amplitudes in [-max_amplitude, max_amplitude], widths in
/// [min_width, 2*min_width]. n_bumps = 0 degenerates to Flat(0).
std::unique_ptr<Terrain> random_terrain(std::uint64_t seed, int n_bumps,
                                        double max_amplitude, double min_width,
                                        double extent);

/// Heightmap text format: header "nx ny x0 y0 dx dy", then ny rows of nx
/// heights, y increasing. Round-trips bit-exactly.
std::unique_ptr<HeightmapTerrain> load_heightmap(const std::string& path);
void save_heightmap(const HeightmapTerrain& terrain, const std::string& path);

/// The terrain restricted to a circle: g(phi) = height at
/// center + radius * (cos phi, sin phi). This one-variable profile is what
/// every touchdown height is built from.
class CircleProfile {
 public:
  CircleProfile(const Terrain& source, Vec2 center, double radius);

  double operator()(double phi) const {
    const double x = center_.x + radius_ * std::cos(phi);
    const double y = center_.y + radius_ * std::sin(phi);
    return source_->height_at(x, y);
  }

  /// Lipschitz bound in the angle variable.
  double lipschitz_bound() const {
    return source_->lipschitz_bound() * radius_;
  }

  Vec2 center() const { return center_; }
  double radius() const { return radius_; }
  const Terrain& source() const { return *source_; }

 private:
  const Terrain* source_;  // not owned; caller keeps the terrain alive
  Vec2 center_;
  double radius_;
};

CircleProfile circle_profile(const Terrain& terrain, Vec2 center,
                             double radius);

}  // namespace tableturn
