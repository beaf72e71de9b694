#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tableturn/ergodic.hpp"
#include "tableturn/solver.hpp"
#include "test_helpers.hpp"

using namespace tableturn;
using testing::make_harmonic8;
using testing::make_hexagon;
using testing::make_saddle;
using testing::make_square;
using testing::make_touching_zero_terrain;
using testing::random_equal_diag_geometry;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Dense brute-force root localization: every sign change of h_delta on an
// n-point grid, reported as the midpoint of the bracketing cell.
std::vector<double> dense_sign_change_oracle(const TableGeometry& geom,
                                             const Terrain& terrain,
                                             std::size_t n) {
  const HeightProfile profile(geom, terrain);
  std::vector<double> roots;
  double prev = h_delta_abstract(profile, 0.0);
  double prev_theta = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double theta = kTwoPi * static_cast<double>(k % n) / static_cast<double>(n);
    const double unwrapped = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const double value = h_delta_abstract(profile, theta);
    if (prev != 0.0 && value != 0.0 && (prev < 0.0) != (value < 0.0)) {
      roots.push_back(std::fmod(0.5 * (prev_theta + unwrapped), kTwoPi));
    }
    prev = value;
    prev_theta = unwrapped;
  }
  return roots;
}

}  // namespace

TEST_CASE("sweep: flat terrain rows are all zero") {
  const FlatTerrain flat(0.0);
  const SweepTable table = sweep(make_hexagon(), flat, 16);
  REQUIRE(table.rows.size() == 16);
  REQUIRE(table.thetas.size() == 16);
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(table.thetas[k] == kTwoPi * static_cast<double>(k) / 16.0);
    if (k > 0) CHECK(table.thetas[k] > table.thetas[k - 1]);
    CHECK(std::abs(table.rows[k].h_delta) < 1e-14);
    CHECK(std::abs(table.rows[k].hover) < 1e-14);
    CHECK(table.rows[k].model == TouchModel::rigid);
  }
  CHECK(table.thetas.back() < kTwoPi);

  CHECK_THROWS_AS(sweep(make_hexagon(), flat, 7), std::invalid_argument);
}

TEST_CASE("sweep: square on the saddle matches -2 cos 2 theta") {
  const auto saddle = make_saddle();
  const SweepTable table = sweep(make_square(), saddle, 360);
  for (std::size_t k = 0; k < 360; ++k) {
    const double expected = -2.0 * std::cos(2.0 * table.thetas[k]);
    CHECK(std::abs(table.rows[k].h_delta - expected) <= 1e-12);
  }
}

TEST_CASE("sweep: repeated runs are bit-identical") {
  const auto terrain = random_terrain(42, 8, 0.05, 1.0, 2.0);
  const SweepTable t1 = sweep(make_hexagon(), *terrain, 256);
  const SweepTable t2 = sweep(make_hexagon(), *terrain, 256);
  CHECK(sweep_csv(t1) == sweep_csv(t2));
  for (std::size_t k = 0; k < 256; ++k) {
    CHECK(t1.rows[k].h_delta == t2.rows[k].h_delta);
    CHECK(t1.rows[k].hover == t2.rows[k].hover);
  }
  // Abstract and rigid sweeps agree to solver precision.
  const SweepTable ta = sweep(make_hexagon(), *terrain, 256, TouchModel::abstract);
  for (std::size_t k = 0; k < 256; ++k) {
    CHECK(std::abs(ta.rows[k].h_delta - t1.rows[k].h_delta) < 1e-10);
  }
}

TEST_CASE("find_stabilizing_angles: flat terrain is everywhere stable") {
  const FlatTerrain flat(1.0);
  const StabilizationResult result = find_stabilizing_angles(make_hexagon(), flat);
  CHECK(result.verdict == Verdict::everywhere_stable);
  CHECK(result.angles.empty());
  CHECK(result.epsilon_floor < 1e-14);
  CHECK(result.max_abs_h_delta < 1e-14);
  CHECK(std::abs(result.ergodic_average) < 1e-14);
  CHECK(!result.lipschitz_warning);
  CHECK(to_string(result.verdict) == "everywhere_stable");
}

TEST_CASE("find_stabilizing_angles: the saddle's four closed-form roots") {
  const auto saddle = make_saddle();
  const StabilizationResult result =
      find_stabilizing_angles(make_square(), saddle, 360, 1e-9);
  CHECK(result.verdict == Verdict::angles_found);
  REQUIRE(result.angles.size() == 4);
  const double expected[] = {std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 4.0,
                             5.0 * std::numbers::pi / 4.0,
                             7.0 * std::numbers::pi / 4.0};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(result.angles[i].theta - expected[i]) <= 1e-10);
    CHECK(result.angles[i].residual <= 1e-9);
    CHECK(certify(make_square(), saddle, result.angles[i].theta, 1e-9));
  }
  CHECK(std::abs(result.max_abs_h_delta - 2.0) < 1e-3);
  // Roots are reported sorted and inside [0, 2 pi).
  for (const auto& root : result.angles) {
    CHECK(root.theta >= 0.0);
    CHECK(root.theta < kTwoPi);
  }
  CHECK(std::is_sorted(result.angles.begin(), result.angles.end(),
                       [](const RootCertificate& u, const RootCertificate& v) {
                         return u.theta < v.theta;
                       }));
}

TEST_CASE("certify: true exactly where a common resting plane exists") {
  const FlatTerrain flat(0.3);
  for (int k = 0; k < 8; ++k) {
    CHECK(certify(make_square(), flat, kTwoPi * k / 8.0, 1e-9));
  }
  const auto saddle = make_saddle();
  CHECK(!certify(make_square(), saddle, 0.0, 1e-9));  // hover = 2 there
  CHECK(certify(make_square(), saddle, std::numbers::pi / 4.0, 1e-9));
}

TEST_CASE("hexagon table on seeded bump terrain: roots exist and are certified") {
  const TableGeometry hex = make_hexagon();
  const auto terrain = random_terrain(42, 8, 0.05, 1.0, 2.0);
  const StabilizationResult result = find_stabilizing_angles(hex, *terrain);
  CHECK(result.verdict == Verdict::angles_found);
  CHECK(result.angles.size() >= 1);
  for (const auto& root : result.angles) {
    CHECK(root.residual <= 1e-9);
    CHECK(certify(hex, *terrain, root.theta, 1e-9));
  }
  CHECK(!result.lipschitz_warning);
  CHECK(result.lipschitz_bound <= 0.3);
  CHECK(std::abs(result.lipschitz_gate - 0.5) < 1e-12);
  // The Birkhoff average witnesses the vanishing circle average.
  CHECK(std::abs(result.ergodic_average) < 1e-3);
}

TEST_CASE("reported roots match a dense sign-change oracle both ways") {
  const TableGeometry hex = make_hexagon();
  const std::size_t oracle_n = 100000;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto terrain = random_terrain(seed, 8, 0.05, 1.0, 2.0);
    const StabilizationResult result = find_stabilizing_angles(hex, *terrain);
    REQUIRE(result.verdict == Verdict::angles_found);
    const std::vector<double> oracle =
        dense_sign_change_oracle(hex, *terrain, oracle_n);
    REQUIRE(!oracle.empty());

    // Completeness: every oracle sign change has a reported root within one
    // oracle cell.
    for (double oracle_root : oracle) {
      double best = kTwoPi;
      for (const auto& root : result.angles) {
        best = std::min(best, circular_distance(root.theta, oracle_root));
      }
      CHECK(best <= kTwoPi / static_cast<double>(oracle_n));
    }
    // Soundness of crossing roots: a reported root is either near an oracle
    // sign change or a genuine tangential zero (tiny residual either way).
    for (const auto& root : result.angles) {
      CHECK(root.residual <= 1e-9);
    }
  }
}

TEST_CASE("equal-diagonal geometries never fail on gentle terrain") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const TableGeometry geom = random_equal_diag_geometry(rng);
    const auto terrain = random_terrain(300 + trial, 8, 0.05, 1.0, 2.0);
    const StabilizationResult result = find_stabilizing_angles(geom, *terrain);
    CHECK(result.verdict != Verdict::none_found);
    for (const auto& root : result.angles) {
      CHECK(certify(geom, *terrain, root.theta, 1e-9));
    }
  }
}

TEST_CASE("rotating the terrain rotates every root with it") {
  const TableGeometry hex = make_hexagon();
  const auto base = random_terrain(42, 8, 0.05, 1.0, 2.0);
  const auto* bumps = dynamic_cast<const BumpFieldTerrain*>(base.get());
  REQUIRE(bumps != nullptr);

  const double beta = 0.81;  // arbitrary rotation of the world
  std::vector<Bump> turned = bumps->bumps();
  for (auto& bump : turned) bump.center = rotate(bump.center, beta);
  const BumpFieldTerrain rotated(turned);

  const StabilizationResult r0 = find_stabilizing_angles(hex, *base);
  const StabilizationResult r1 = find_stabilizing_angles(hex, rotated);
  REQUIRE(r0.verdict == Verdict::angles_found);
  REQUIRE(r1.verdict == Verdict::angles_found);
  REQUIRE(r0.angles.size() == r1.angles.size());
  // Gaussians are radially symmetric, so rotating the centers rotates the
  // whole height field; every root must shift by exactly beta.
  for (const auto& root : r0.angles) {
    double best = kTwoPi;
    for (const auto& shifted : r1.angles) {
      best = std::min(best, circular_distance(root.theta + beta, shifted.theta));
    }
    CHECK(best <= 1e-9);
  }
}

TEST_CASE("touching zeros are found by the |h_delta| <= tol refinement") {
  // h_delta = sin 2 theta + sin 6 theta = 4 sin 2 theta cos^2 2 theta:
  // crossing zeros at multiples of pi/2, touching zeros at odd multiples of
  // pi/4 where the sign does not change.
  const auto terrain = make_touching_zero_terrain();
  const StabilizationResult result =
      find_stabilizing_angles(make_square(), terrain, 1024, 1e-9);
  CHECK(result.verdict == Verdict::angles_found);
  // Around a touching zero the bisection can certify two or three points a
  // few 1e-9 apart (distinct at the pinned merge radius), so the count may
  // exceed 8 -- but every reported root must sit at one of the 8 true zeros,
  // and all 8 must be covered.
  REQUIRE(result.angles.size() >= 8);
  for (const auto& root : result.angles) {
    CHECK(root.residual <= 1e-9);
    double nearest = kTwoPi;
    for (int i = 0; i < 8; ++i) {
      const double expected = static_cast<double>(i) * std::numbers::pi / 4.0;
      nearest = std::min(nearest, circular_distance(root.theta, expected));
    }
    CHECK(nearest <= 1e-6);
  }
  for (int i = 0; i < 8; ++i) {
    const double expected = static_cast<double>(i) * std::numbers::pi / 4.0;
    double best = kTwoPi;
    for (const auto& root : result.angles) {
      best = std::min(best, circular_distance(root.theta, expected));
    }
    CHECK(best <= 1e-6);
  }
}

TEST_CASE("aliased sweep reports none_found with actionable diagnostics") {
  // The profile oscillates 8 times per turn; an 8-point sweep samples it at
  // the same phase every time and sees no sign change.
  const auto terrain = make_harmonic8(0.01);
  const TableGeometry hex = make_hexagon();
  const StabilizationResult coarse = find_stabilizing_angles(hex, terrain, 8, 1e-9);
  CHECK(coarse.verdict == Verdict::none_found);
  CHECK(coarse.angles.empty());
  CHECK(coarse.epsilon_floor > 1e-3);
  REQUIRE(!coarse.diagnostics.empty());
  bool mentions_n = false;
  for (const auto& message : coarse.diagnostics) {
    if (message.find("raising N") != std::string::npos) mentions_n = true;
  }
  CHECK(mentions_n);

  // A realistic resolution immediately finds the 16 roots of cos 8 theta.
  const StabilizationResult fine = find_stabilizing_angles(hex, terrain, 1024, 1e-9);
  CHECK(fine.verdict == Verdict::angles_found);
  CHECK(fine.angles.size() == 16);
}

TEST_CASE("lipschitz gate: steep terrain warns without changing the verdict") {
  // Affine terrain of slope 2 is far above any gate, yet h_delta vanishes
  // identically, so the verdict stays everywhere_stable.
  const AffineTerrain steep(2.0, 0.0, 0.0);
  const StabilizationResult result = find_stabilizing_angles(make_square(), steep);
  CHECK(result.verdict == Verdict::everywhere_stable);
  CHECK(result.lipschitz_warning);
  CHECK(result.lipschitz_bound == 2.0);
  CHECK(std::abs(result.lipschitz_gate - 0.5 * std::sqrt(2.0)) < 1e-12);
  REQUIRE(!result.diagnostics.empty());
  CHECK(result.diagnostics.front().find("not guaranteed") != std::string::npos);

  CHECK(std::abs(lipschitz_gate(make_hexagon()) - 0.5) < 1e-14);
  CHECK(std::abs(lipschitz_gate(make_square()) - std::sqrt(2.0) / 2.0) < 1e-14);
}

TEST_CASE("solver input validation") {
  const FlatTerrain flat(0.0);
  CHECK_THROWS_AS(find_stabilizing_angles(make_square(), flat, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_stabilizing_angles(make_square(), flat, 1024, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_stabilizing_angles(make_square(), flat, 1024, -1e-9),
                  std::invalid_argument);
  // A heightmap smaller than the leg circle is a domain violation.
  const HeightmapTerrain tiny(2, 2, -0.5, -0.5, 1.0, 1.0, {0, 0, 0, 0});
  CHECK_THROWS_AS(sweep(make_square(), tiny, 16), std::domain_error);
  CHECK_THROWS_AS(find_stabilizing_angles(make_square(), tiny), std::domain_error);
}

TEST_CASE("ergodic certificate: flat terrain has zero average and zero spread") {
  const FlatTerrain flat(0.0);
  const ErgodicCertificate cert =
      ergodic_certificate(make_square(), flat, golden_angle(), 1000, 1e-2);
  CHECK(std::abs(cert.birkhoff_avg) < 1e-14);
  CHECK(cert.min_abs_h_delta < 1e-14);
  CHECK(cert.max_abs_h_delta < 1e-14);
  CHECK(!cert.wobbles_everywhere);
  CHECK(cert.average_within_eps);
  CHECK(!cert.contradiction);
}

TEST_CASE("ergodic certificate: saddle forces a zero through the average") {
  const auto saddle = make_saddle();
  const ErgodicCertificate cert =
      ergodic_certificate(make_square(), saddle, golden_angle(), 100000, 1e-2);
  // max |h_delta| = 2, but the average is pinned near the circle average 0:
  // the function cannot stay above eps everywhere.
  CHECK(std::abs(cert.birkhoff_avg) <= 1e-2);
  CHECK(std::abs(cert.max_abs_h_delta - 2.0) < 1e-6);
  CHECK(cert.min_abs_h_delta < 1e-9);  // the sweep lands on a root
  CHECK(cert.average_within_eps);
  CHECK(!cert.wobbles_everywhere);
  CHECK(cert.contradiction == (cert.wobbles_everywhere && cert.average_within_eps));

  const std::string text = to_text(cert);
  CHECK(text.find("birkhoff average") != std::string::npos);
  CHECK(text.find("near-stable angle") != std::string::npos);
}

TEST_CASE("ergodic certificate: consistency across seeded terrains") {
  // The contradiction pair can never materialize on smooth terrain:
  // whenever the sweep min exceeds eps, the average must too.
  const TableGeometry hex = make_hexagon();
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto terrain = random_terrain(seed, 8, 0.05, 1.0, 2.0);
    const ErgodicCertificate cert =
        ergodic_certificate(hex, *terrain, golden_angle(), 10000, 1e-3);
    CHECK(!cert.contradiction);
    CHECK(cert.contradiction == (cert.wobbles_everywhere && cert.average_within_eps));
  }
}

TEST_CASE("stabilization results serialize to text and CSV") {
  const auto saddle = make_saddle();
  const StabilizationResult result =
      find_stabilizing_angles(make_square(), saddle, 360, 1e-9);
  const std::string text = to_text(result);
  CHECK(text.find("verdict: angles_found") != std::string::npos);
  CHECK(text.find("stabilizing angles (4)") != std::string::npos);
  CHECK(text.find("epsilon_floor") != std::string::npos);
  CHECK(text.find("lipschitz gate") != std::string::npos);

  const std::string csv = roots_csv(result);
  std::size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 5);  // header + 4 roots
  CHECK(csv.rfind("theta,residual\n", 0) == 0);
}
