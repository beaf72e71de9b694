#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tableturn/geometry.hpp"
#include "tableturn/terrain.hpp"

namespace tableturn::testing {

inline TableGeometry make_square(double radius = 1.0) {
  return TableGeometry(radius, TurnAngle(1, 4), TurnAngle(1, 2), TurnAngle(3, 4));
}

// The running example: a hexagon with two adjacent corners cut off, legs at
// 0, 1/6, 1/3 and 1/2 of a turn.
inline TableGeometry make_hexagon(double radius = 1.0) {
  return TableGeometry(radius, TurnAngle(1, 6), TurnAngle(1, 3), TurnAngle(1, 2));
}

// Random member of the equal-diagonal family theta_d = theta_b + theta_c
// (the arcs subtended by the two diagonals then agree exactly).
inline TableGeometry random_equal_diag_geometry(std::mt19937_64& rng,
                                                double radius = 1.0) {
  std::uniform_int_distribution<std::int64_t> den_dist(5, 24);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const std::int64_t qb = den_dist(rng);
    const std::int64_t qc = den_dist(rng);
    const TurnAngle b(std::uniform_int_distribution<std::int64_t>(1, qb - 1)(rng), qb);
    const TurnAngle c(std::uniform_int_distribution<std::int64_t>(1, qc - 1)(rng), qc);
    if (!(b < c)) continue;
    if (b.turns() + c.turns() >= 0.98) continue;
    const TurnAngle d = b + c;
    if (!(c < d)) continue;
    return TableGeometry(radius, b, c, d);
  }
  throw std::logic_error("random_equal_diag_geometry: no sample found");
}

// Sum of harmonic polynomials Re(c * (x + i y)^k): closed-form circle
// profiles (r^k combinations of cos k*phi and sin k*phi) with exactly known
// slope bound sum |c| * k * R^(k-1) on a disc of radius R. These make clean
// independent oracles for the touchdown and averaging code.
class HarmonicTerrain final : public Terrain {
 public:
  using Term = std::pair<int, std::complex<double>>;

  HarmonicTerrain(std::vector<Term> terms, double domain_radius)
      : terms_(std::move(terms)), domain_radius_(domain_radius) {
    for (const auto& [k, c] : terms_) {
      if (k < 1) throw std::invalid_argument("harmonic degree must be >= 1");
    }
  }

  double height_at(double x, double y) const override {
    const std::complex<double> w(x, y);
    std::complex<double> sum = 0.0;
    for (const auto& [k, c] : terms_) sum += c * ipow(w, k);
    return sum.real();
  }

  double lipschitz_bound() const override {
    double bound = 0.0;
    for (const auto& [k, c] : terms_) {
      bound += std::abs(c) * static_cast<double>(k) *
               std::pow(domain_radius_, k - 1);
    }
    return bound;
  }

  bool domain_contains_circle(Vec2 center, double radius) const override {
    return std::hypot(center.x, center.y) + radius <= domain_radius_;
  }

  std::string describe() const override {
    std::ostringstream out;
    out << "harmonic polynomial with " << terms_.size() << " terms";
    return out.str();
  }

 private:
  static std::complex<double> ipow(std::complex<double> w, int k) {
    std::complex<double> result = 1.0;
    while (k > 0) {
      if (k & 1) result *= w;
      w *= w;
      k >>= 1;
    }
    return result;
  }

  std::vector<Term> terms_;
  double domain_radius_;
};

// z = x^2 - y^2; restricted to the unit circle this is cos(2 phi).
inline HarmonicTerrain make_saddle(double domain_radius = 4.0) {
  return HarmonicTerrain({{2, {1.0, 0.0}}}, domain_radius);
}

// Circle profile -(1/2)(sin 2phi + sin 6phi) on the unit circle; its h_delta
// for the square table is 4 sin(2 theta) cos^2(2 theta), which has both
// crossing and touching zeros.
inline HarmonicTerrain make_touching_zero_terrain(double domain_radius = 2.0) {
  return HarmonicTerrain({{2, {0.0, 0.5}}, {6, {0.0, 0.5}}}, domain_radius);
}

// c * sin(8 phi) on the unit circle: every multiple of 2\pi/8 samples it at
// the same value, so a coarse 8-point sweep sees a constant function.
inline HarmonicTerrain make_harmonic8(double amplitude = 0.01,
                                      double domain_radius = 2.0) {
  return HarmonicTerrain({{8, {0.0, -amplitude}}}, domain_radius);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 10000; ++attempt) {
      auto candidate = base / ("tableturn_test_" + std::to_string(counter++));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw std::runtime_error("cannot create temp directory");
  }

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace tableturn::testing
