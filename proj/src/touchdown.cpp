#include "tableturn/touchdown.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "tableturn/format.hpp"

namespace tableturn {

namespace {

// Solves a 3x3 system by Gaussian elimination with partial pivoting. The
// system here is never singular for a proper quadrilateral (A, C and the
// B-D direction are affinely independent), so a vanishing pivot is a logic
// error, not an input error.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    if (std::abs(m[col][col]) < 1e-14) {
      throw std::logic_error("table plane system is singular");
    }
    for (int row = col + 1; row < 3; ++row) {
      const double factor = m[row][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double acc = m[row][3];
    for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * x[k];
    x[row] = acc / m[row][row];
  }
  return x;
}

}  // namespace

std::string to_string(TouchModel model) {
  return model == TouchModel::abstract ? "abstract" : "rigid";
}

TouchModel touch_model_from_string(const std::string& text) {
  if (text == "abstract") return TouchModel::abstract;
  if (text == "rigid") return TouchModel::rigid;
  throw std::invalid_argument("unknown touchdown model: \"" + text + "\"");
}

HeightProfile::HeightProfile(TableGeometry geom, CircleProfile profile)
    : geom_(std::move(geom)), profile_(std::move(profile)) {
  if (profile_.radius() != geom_.radius()) {
    throw std::invalid_argument(
        "HeightProfile: circle profile radius does not match the geometry");
  }
}

HeightProfile::HeightProfile(TableGeometry geom, const Terrain& terrain)
    : geom_(geom), profile_(terrain, Vec2{0.0, 0.0}, geom.radius()) {}

double h_ac_abstract(const HeightProfile& profile, double theta) {
  const double tau = profile.geometry().tau();
  return tau * profile.h_a(theta) + (1.0 - tau) * profile.h_c(theta);
}

double h_bd_abstract(const HeightProfile& profile, double theta) {
  const double mu = profile.geometry().mu();
  return mu * profile.h_b(theta) + (1.0 - mu) * profile.h_d(theta);
}

double h_delta_abstract(const HeightProfile& profile, double theta) {
  return h_bd_abstract(profile, theta) - h_ac_abstract(profile, theta);
}

TouchdownResult touchdown_abstract(const HeightProfile& profile,
                                   double theta) {
  TouchdownResult result;
  result.theta = theta;
  result.h_ac = h_ac_abstract(profile, theta);
  result.h_bd = h_bd_abstract(profile, theta);
  result.h_delta = result.h_bd - result.h_ac;
  result.hover = -result.h_delta;
  result.model = TouchModel::abstract;
  return result;
}

TouchdownResult equal_hover_rigid(const TableGeometry& geom,
                                  const Terrain& terrain, double theta) {
  const auto legs = geom.leg_positions(theta);
  std::array<double, 4> ground{};
  for (int i = 0; i < 4; ++i) {
    ground[i] = terrain.height_at(legs[i].x, legs[i].y);
  }
  const Vec2 a = legs[0], b = legs[1], c = legs[2], d = legs[3];

  // Table plane z = coeff[0] + coeff[1]*x + coeff[2]*y with A and C resting
  // on the ground and B, D sharing a common hover height.
  const auto coeff = solve3({{{1.0, a.x, a.y, ground[0]},
                              {1.0, c.x, c.y, ground[2]},
                              {0.0, b.x - d.x, b.y - d.y,
                               ground[1] - ground[3]}}});
  const auto plane = [&coeff](Vec2 p) {
    return coeff[0] + coeff[1] * p.x + coeff[2] * p.y;
  };

  TouchdownResult result;
  result.theta = theta;
  result.model = TouchModel::rigid;
  result.hover = plane(b) - ground[1];
  const Vec2 x_world = rotate(geom.intersection_point(), theta);
  result.h_ac = plane(x_world);
  result.h_bd = geom.mu() * ground[1] + (1.0 - geom.mu()) * ground[3];
  result.h_delta = result.h_bd - result.h_ac;
  return result;
}

bool wobbles(const TouchdownResult& result, double tol) {
  return std::abs(result.h_delta) > tol;
}

std::string touchdown_csv_header() {
  return "theta,h_ac,h_bd,h_delta,hover,model";
}

std::string touchdown_csv_row(const TouchdownResult& result) {
  return fmt_g17(result.theta) + "," + fmt_g17(result.h_ac) + "," +
         fmt_g17(result.h_bd) + "," + fmt_g17(result.h_delta) + "," +
         fmt_g17(result.hover) + "," + to_string(result.model);
}

}  // namespace tableturn
