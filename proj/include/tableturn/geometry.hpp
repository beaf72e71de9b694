#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tableturn/turn_angle.hpp"
#include "tableturn/vec2.hpp"

namespace tableturn {

enum class Leg { A = 0, B = 1, C = 2, D = 3 };

constexpr std::array<Leg, 4> kLegs = {Leg::A, Leg::B, Leg::C, Leg::D};

char leg_name(Leg e);

/// Length of the chord subtending `subtended` on a circle of radius
/// `radius`: 2 r sin(pi * subtended). Requires 0 < subtended < 1 turn.
double chord_length(double radius, TurnAngle subtended);

/// Intersection of the two diagonals, expressed both as a point (table
/// frame, rotation 0) and as the convex-combination ratios
/// X = tau*A + (1-tau)*C = mu*B + (1-mu)*D, with tau = CX/CA and mu = DX/DB.
struct DiagonalIntersection {
  Vec2 point;
  double tau = 0.0;
  double mu = 0.0;
};

/// A four-legged table whose leg ends lie on a circle of the given radius
/// around the rotation axis. Leg A sits at angle zero by convention; the
/// remaining legs at exact rational fractions of a turn, in strict
/// counterclockwise order A, B, C, D.
///
/// Immutable after construction; all member functions are pure.
class TableGeometry {
 public:
  TableGeometry(double radius, TurnAngle theta_b, TurnAngle theta_c,
                TurnAngle theta_d);

  double radius() const { return radius_; }
  TurnAngle leg_angle(Leg e) const { return theta_[static_cast<int>(e)]; }
  TurnAngle theta_b() const { return theta_[1]; }
  TurnAngle theta_c() const { return theta_[2]; }
  TurnAngle theta_d() const { return theta_[3]; }

  /// Position of a leg end after rotating the table by `theta` radians.
  Vec2 leg_position(Leg e, double theta) const;
  std::array<Vec2, 4> leg_positions(double theta) const;

  double diag_ac() const { return diag_ac_; }
  double diag_bd() const { return diag_bd_; }
  double tau() const { return tau_; }
  double mu() const { return mu_; }

  /// Diagonal intersection point X in the table frame (rotation 0).
  Vec2 intersection_point() const { return x_table_; }

 private:
  double radius_;
  std::array<TurnAngle, 4> theta_;
  double diag_ac_;
  double diag_bd_;
  double tau_;
  double mu_;
  Vec2 x_table_;
};

DiagonalIntersection diagonal_intersection(const TableGeometry& geom);

/// Outcome of checking the stabilization hypotheses on a geometry. Failed
/// checks are reported, never thrown.
struct ValidationReport {
  bool cyclic_ok = false;
  bool equal_diagonals_ok = false;
  /// Rotation mapping chord AC onto chord BD; present exactly when the
  /// diagonals are equal.
  std::optional<TurnAngle> diagonal_rotation;
  /// Central angle subtending diagonal AC.
  TurnAngle supporting_angle;
  std::vector<std::string> messages;

  bool all_ok() const { return cyclic_ok && equal_diagonals_ok; }
};

/// Checks that the diagonals have equal length (within rel_tol * radius)
/// and records the supporting angle and the diagonal-to-diagonal rotation.
/// The rationality hypotheses hold structurally: every angle in play is a
/// TurnAngle.
ValidationReport validate_assumptions(const TableGeometry& geom,
                                      double rel_tol = 1e-9);

std::string to_text(const ValidationReport& report);

/// Smallest chord distance between cyclically adjacent leg ends.
double min_leg_spacing(const TableGeometry& geom);

std::string describe(const TableGeometry& geom);

}  // namespace tableturn
