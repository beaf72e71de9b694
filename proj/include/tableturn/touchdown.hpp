#pragma once

#include <string>

#include "tableturn/geometry.hpp"
#include "tableturn/terrain.hpp"

namespace tableturn {

/// Which touchdown model produced a result. The abstract model works on the
/// circle profile alone, mirroring the convex-combination height functions;
/// the rigid model fits a small-tilt table plane at each angle.
enum class TouchModel { abstract, rigid };

std::string to_string(TouchModel model);
TouchModel touch_model_from_string(const std::string& text);

/// The per-leg height functions of the abstract model: every leg samples the
/// same circle profile g, shifted by its own leg angle, so the translation
/// property h_E(theta) = h_A(theta + theta_E) holds by construction (the
/// evaluation path is literally shared).
class HeightProfile {
 public:
  HeightProfile(TableGeometry geom, CircleProfile profile);

  /// Builds the circle profile on the terrain with the rotation axis at the
  /// origin.
  HeightProfile(TableGeometry geom, const Terrain& terrain);

  double leg_height(Leg e, double theta) const {
    return profile_(theta + geom_.leg_angle(e).radians());
  }
  double h_a(double theta) const { return leg_height(Leg::A, theta); }
  double h_b(double theta) const { return leg_height(Leg::B, theta); }
  double h_c(double theta) const { return leg_height(Leg::C, theta); }
  double h_d(double theta) const { return leg_height(Leg::D, theta); }

  const TableGeometry& geometry() const { return geom_; }
  const CircleProfile& profile() const { return profile_; }

 private:
  TableGeometry geom_;
  CircleProfile profile_;
};

/// One row of the touchdown picture at a fixed rotation angle.
struct TouchdownResult {
  double theta = 0.0;
  double h_ac = 0.0;     // height of X after an AC-touchdown
  double h_bd = 0.0;     // height of X after a BD-touchdown
  double h_delta = 0.0;  // h_bd - h_ac
  double hover = 0.0;    // equal-hovering height of legs B and D
  TouchModel model = TouchModel::rigid;
};

/// tau * h_A(theta) + (1 - tau) * h_C(theta).
double h_ac_abstract(const HeightProfile& profile, double theta);

/// mu * h_B(theta) + (1 - mu) * h_D(theta).
double h_bd_abstract(const HeightProfile& profile, double theta);

/// h_BD - h_AC; the table rests at theta exactly when this vanishes.
double h_delta_abstract(const HeightProfile& profile, double theta);

TouchdownResult touchdown_abstract(const HeightProfile& profile, double theta);

/// Rests the diagonal AC on the terrain and tilts the table plane until legs
/// B and D hover at a common height: solves z = c + p x + q y subject to
/// z(A) = g_A, z(C) = g_C, z(B) - g_B = z(D) - g_D, where g_E is the terrain
/// height under leg E at rotation theta. hover < 0 means B and D would have
/// to sink below the terrain (the AC-touchdown was not legal, but the value
/// is still informative).
TouchdownResult equal_hover_rigid(const TableGeometry& geom,
                                  const Terrain& terrain, double theta);

/// True iff the four legs admit no common resting plane at this angle.
bool wobbles(const TouchdownResult& result, double tol);

std::string touchdown_csv_header();
std::string touchdown_csv_row(const TouchdownResult& result);

}  // namespace tableturn
