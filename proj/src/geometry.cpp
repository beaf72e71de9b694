#include "tableturn/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tableturn/format.hpp"

namespace tableturn {

namespace {

// Intersection of segments A-C and B-D via the usual parametric solve.
// Returns the parameters t, s with X = A + t*(C-A) = B + s*(D-B).
struct SegmentParams {
  double t;
  double s;
};

SegmentParams intersect_diagonals(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const Vec2 ac = c - a;
  const Vec2 bd = d - b;
  const double denom = cross(ac, bd);
  if (denom == 0.0) {
    throw std::logic_error("diagonals are parallel; geometry is degenerate");
  }
  const Vec2 ab = b - a;
  const double t = cross(ab, bd) / denom;
  const double s = cross(ab, ac) / denom;
  return {t, s};
}

}  // namespace

char leg_name(Leg e) {
  switch (e) {
    case Leg::A: return 'A';
    case Leg::B: return 'B';
    case Leg::C: return 'C';
    case Leg::D: return 'D';
  }
  return '?';
}

double chord_length(double radius, TurnAngle subtended) {
  if (radius <= 0.0) {
    throw std::invalid_argument("chord_length: radius must be positive");
  }
  if (subtended.is_zero()) {
    throw std::invalid_argument("chord_length: subtended angle must be nonzero");
  }
  return 2.0 * radius * std::sin(0.5 * subtended.radians());
}

TableGeometry::TableGeometry(double radius, TurnAngle theta_b,
                             TurnAngle theta_c, TurnAngle theta_d)
    : radius_(radius), theta_{TurnAngle(), theta_b, theta_c, theta_d} {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("TableGeometry: radius must be positive");
  }
  if (theta_b.is_zero() || !(theta_b < theta_c) || !(theta_c < theta_d)) {
    throw std::invalid_argument(
        "TableGeometry: leg angles must satisfy 0 < theta_b < theta_c < "
        "theta_d < 1 turn (degenerate quadrilateral otherwise)");
  }

  diag_ac_ = chord_length(radius_, theta_c);
  diag_bd_ = chord_length(radius_, theta_d - theta_b);

  const auto legs = leg_positions(0.0);
  const auto [t, s] = intersect_diagonals(legs[0], legs[1], legs[2], legs[3]);
  // Strict cyclic order guarantees a proper interior crossing.
  if (!(t > 0.0 && t < 1.0 && s > 0.0 && s < 1.0)) {
    throw std::logic_error("diagonals do not properly intersect");
  }
  tau_ = 1.0 - t;  // X = (1-t)A + tC = tau*A + (1-tau)*C
  mu_ = 1.0 - s;
  x_table_ = legs[0] + t * (legs[2] - legs[0]);
}

Vec2 TableGeometry::leg_position(Leg e, double theta) const {
  const double phi = theta + theta_[static_cast<int>(e)].radians();
  return {radius_ * std::cos(phi), radius_ * std::sin(phi)};
}

std::array<Vec2, 4> TableGeometry::leg_positions(double theta) const {
  return {leg_position(Leg::A, theta), leg_position(Leg::B, theta),
          leg_position(Leg::C, theta), leg_position(Leg::D, theta)};
}

DiagonalIntersection diagonal_intersection(const TableGeometry& geom) {
  return {geom.intersection_point(), geom.tau(), geom.mu()};
}

ValidationReport validate_assumptions(const TableGeometry& geom,
                                      double rel_tol) {
  ValidationReport report;
  report.cyclic_ok = true;  // enforced by construction
  report.messages.push_back("legs lie on a common circle of radius " +
                            fmt_g(geom.radius()) + " in order A, B, C, D");

  const TurnAngle subtend_ac = geom.theta_c();
  const TurnAngle subtend_bd = geom.theta_d() - geom.theta_b();
  report.supporting_angle = subtend_ac;
  report.messages.push_back("diagonal AC subtends " + subtend_ac.to_string() +
                            " turn, BD subtends " + subtend_bd.to_string() +
                            " turn");

  const double gap = std::abs(geom.diag_ac() - geom.diag_bd());
  report.equal_diagonals_ok = gap <= rel_tol * geom.radius();
  if (report.equal_diagonals_ok) {
    report.messages.push_back("diagonals are equal: |" + fmt_g(geom.diag_ac()) +
                              " - " + fmt_g(geom.diag_bd()) + "| <= " +
                              fmt_g(rel_tol * geom.radius()));
    // Prefer the exact witness rotation when one exists. Rotation by
    // theta_b maps (A, C) onto (B, D); rotation by theta_d maps (A, C)
    // onto (D, B). Either carries chord AC onto chord BD.
    if (geom.theta_d() - geom.theta_c() == geom.theta_b()) {
      report.diagonal_rotation = geom.theta_b();
    } else if (geom.theta_c() + geom.theta_d() == geom.theta_b()) {
      report.diagonal_rotation = geom.theta_d();
    } else {
      report.diagonal_rotation = geom.theta_b();
    }
    report.messages.push_back("rotation by " +
                              report.diagonal_rotation->to_string() +
                              " turn maps diagonal AC onto diagonal BD");
  } else {
    report.messages.push_back("diagonals differ: |AC| = " +
                              fmt_g(geom.diag_ac()) + ", |BD| = " +
                              fmt_g(geom.diag_bd()) +
                              "; stabilization by rotation is not covered");
  }
  return report;
}

std::string to_text(const ValidationReport& report) {
  std::ostringstream out;
  out << "[validation]\n";
  out << "cyclic_ok = " << (report.cyclic_ok ? "true" : "false") << "\n";
  out << "equal_diagonals_ok = "
      << (report.equal_diagonals_ok ? "true" : "false") << "\n";
  out << "supporting_angle = " << report.supporting_angle.to_string() << "\n";
  if (report.diagonal_rotation) {
    out << "diagonal_rotation = " << report.diagonal_rotation->to_string()
        << "\n";
  }
  for (const auto& msg : report.messages) {
    out << "message = " << msg << "\n";
  }
  return out.str();
}

double min_leg_spacing(const TableGeometry& geom) {
  const std::array<TurnAngle, 4> gaps = {
      geom.theta_b(), geom.theta_c() - geom.theta_b(),
      geom.theta_d() - geom.theta_c(), geom.theta_d().complement()};
  double best = 2.0 * geom.radius();
  for (const auto& gap : gaps) {
    best = std::min(best, chord_length(geom.radius(), gap));
  }
  return best;
}

std::string describe(const TableGeometry& geom) {
  std::ostringstream out;
  out << "radius=" << fmt_g(geom.radius()) << " theta=("
      << geom.theta_b().to_string() << "," << geom.theta_c().to_string() << ","
      << geom.theta_d().to_string() << ")";
  return out.str();
}

}  // namespace tableturn
