#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tableturn/geometry.hpp"
#include "tableturn/terrain.hpp"
#include "tableturn/touchdown.hpp"

namespace tableturn {

/// Touchdown results at N uniform angles theta_k = 2*pi*k/N.
struct SweepTable {
  std::string geometry_id;
  std::string terrain_id;
  std::vector<double> thetas;
  std::vector<TouchdownResult> rows;
};

SweepTable sweep(const TableGeometry& geom, const Terrain& terrain,
                 std::size_t n, TouchModel model = TouchModel::rigid);

std::string sweep_csv(const SweepTable& table);

struct RootCertificate {
  double theta = 0.0;     // in [0, 2*pi)
  double residual = 0.0;  // |h_delta(theta)|
};

enum class Verdict { angles_found, everywhere_stable, none_found };

std::string to_string(Verdict verdict);

struct StabilizationResult {
  Verdict verdict = Verdict::none_found;
  std::vector<RootCertificate> angles;  // sorted by theta, empty unless angles_found
  double epsilon_floor = 0.0;           // min over the sweep of |h_delta|
  double max_abs_h_delta = 0.0;         // max over the sweep of |h_delta|
  double ergodic_average = 0.0;         // Birkhoff average of h_delta, golden rotation
  double lipschitz_bound = 0.0;         // terrain slope bound
  double lipschitz_gate = 0.0;          // geometry's tolerance for that bound
  bool lipschitz_warning = false;       // bound exceeds gate: no guarantee applies
  std::vector<std::string> diagnostics;
};

/// Sweeps h_delta over N uniform angles and classifies the outcome:
/// everywhere_stable when max |h_delta| <= tol, otherwise brackets every sign
/// change (including the wrap-around pair) and bisects to width 1e-12, and
/// refines grid points with |h_delta| <= tol by golden-section minimization
/// to catch zeros of even multiplicity. Roots closer than 1e-9 rad are
/// merged, keeping the smaller residual.
StabilizationResult find_stabilizing_angles(const TableGeometry& geom,
                                            const Terrain& terrain,
                                            std::size_t n = 1024,
                                            double tol = 1e-9,
                                            TouchModel model = TouchModel::rigid);

/// Re-evaluates the rigid touchdown at theta_star: true iff |hover| <= tol,
/// i.e. all four legs admit a common resting plane there.
bool certify(const TableGeometry& geom, const Terrain& terrain,
             double theta_star, double tol);

/// Slope bound under which a stabilizing angle is guaranteed to exist:
/// half the minimum leg spacing over the radius. Terrains steeper than this
/// may still stabilize, but the solver only warns, it cannot promise.
double lipschitz_gate(const TableGeometry& geom);

/// The quantitative shape of the existence proof: if h_delta stayed above
/// eps in absolute value everywhere, its Birkhoff average along an
/// irrational rotation would also exceed eps; the average is the circle
/// average, which is 0 -- contradiction, so a zero exists.
struct ErgodicCertificate {
  double theta0 = 0.0;
  std::size_t n = 0;
  double eps = 0.0;
  double birkhoff_avg = 0.0;
  double min_abs_h_delta = 0.0;  // over an internal 4096-point sweep
  double max_abs_h_delta = 0.0;
  bool wobbles_everywhere = false;  // min |h_delta| > eps at every sample
  bool average_within_eps = false;  // |birkhoff_avg| <= eps
  bool contradiction = false;       // both at once: impossible for a continuous h_delta
};

ErgodicCertificate ergodic_certificate(const TableGeometry& geom,
                                       const Terrain& terrain, double theta0,
                                       std::size_t n, double eps);

std::string to_text(const StabilizationResult& result);
std::string to_text(const ErgodicCertificate& cert);

/// CSV with columns theta,residual; one row per certified angle.
std::string roots_csv(const StabilizationResult& result);

}  // namespace tableturn
