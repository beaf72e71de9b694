#include "tableturn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tableturn/ergodic.hpp"
#include "tableturn/format.hpp"

namespace tableturn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBracketWidth = 1e-12;
constexpr double kMergeDistance = 1e-9;
constexpr std::size_t kMaxBisectionSteps = 200;
constexpr std::size_t kErgodicAverageN = 10000;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

/// h_delta as a plain function of theta under the requested model. Both
/// models agree mathematically (the rigid plane is affine, so its value at X
/// is the same convex combination); they differ only in rounding path.
std::function<double(double)> h_delta_fn(const TableGeometry& geom,
                                         const Terrain& terrain,
                                         TouchModel model) {
  if (model == TouchModel::abstract) {
    auto profile = std::make_shared<HeightProfile>(geom, terrain);
    return [profile](double theta) { return h_delta_abstract(*profile, theta); };
  }
  return [&geom, &terrain](double theta) {
    return equal_hover_rigid(geom, terrain, theta).h_delta;
  };
}

double bisect_root(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb) {
  // Precondition: fa and fb are nonzero with opposite signs.
  for (std::size_t i = 0; i < kMaxBisectionSteps && (b - a) > kBracketWidth; ++i) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

double golden_section_min_abs(const std::function<double(double)>& f, double a,
                              double b) {
  // Minimizes |f| on [a, b]; used to land on zeros of even multiplicity
  // where no sign change exists.
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = std::abs(f(x1));
  double f2 = std::abs(f(x2));
  while ((b - a) > kBracketWidth) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = std::abs(f(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = std::abs(f(x2));
    }
  }
  return 0.5 * (a + b);
}

std::vector<RootCertificate> merge_roots(std::vector<RootCertificate> roots) {
  if (roots.size() < 2) return roots;
  std::sort(roots.begin(), roots.end(),
            [](const RootCertificate& u, const RootCertificate& v) {
              return u.theta < v.theta;
            });
  std::vector<RootCertificate> merged;
  for (const auto& root : roots) {
    if (!merged.empty() && root.theta - merged.back().theta < kMergeDistance) {
      if (root.residual < merged.back().residual) merged.back() = root;
    } else {
      merged.push_back(root);
    }
  }
  // The circle wraps: the first and last root may be the same zero seen from
  // both sides of 0.
  if (merged.size() >= 2 &&
      merged.front().theta + kTwoPi - merged.back().theta < kMergeDistance) {
    if (merged.back().residual < merged.front().residual) {
      merged.front() = merged.back();
    }
    merged.pop_back();
  }
  return merged;
}

void check_domain(const Terrain& terrain, double radius) {
  if (!terrain.domain_contains_circle(Vec2{0.0, 0.0}, radius)) {
    throw std::domain_error("terrain domain does not contain the leg circle");
  }
}

}  // namespace

SweepTable sweep(const TableGeometry& geom, const Terrain& terrain,
                 std::size_t n, TouchModel model) {
  if (n < 8) throw std::invalid_argument("sweep: N must be >= 8");
  check_domain(terrain, geom.radius());

  SweepTable table;
  table.geometry_id = describe(geom);
  table.terrain_id = terrain.describe();
  table.thetas.reserve(n);
  table.rows.reserve(n);

  HeightProfile profile(geom, terrain);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    table.thetas.push_back(theta);
    table.rows.push_back(model == TouchModel::abstract
                             ? touchdown_abstract(profile, theta)
                             : equal_hover_rigid(geom, terrain, theta));
  }
  return table;
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  out << touchdown_csv_header() << '\n';
  for (const auto& row : table.rows) out << touchdown_csv_row(row) << '\n';
  return out.str();
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::angles_found: return "angles_found";
    case Verdict::everywhere_stable: return "everywhere_stable";
    case Verdict::none_found: return "none_found";
  }
  throw std::logic_error("unknown verdict");
}

double lipschitz_gate(const TableGeometry& geom) {
  return 0.5 * min_leg_spacing(geom) / geom.radius();
}

StabilizationResult find_stabilizing_angles(const TableGeometry& geom,
                                            const Terrain& terrain,
                                            std::size_t n, double tol,
                                            TouchModel model) {
  if (n < 8) throw std::invalid_argument("find_stabilizing_angles: N must be >= 8");
  if (tol <= 0.0) throw std::invalid_argument("find_stabilizing_angles: tol must be positive");
  check_domain(terrain, geom.radius());

  const auto f = h_delta_fn(geom, terrain, model);

  std::vector<double> thetas(n);
  std::vector<double> values(n);
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    thetas[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    values[k] = f(thetas[k]);
    min_abs = std::min(min_abs, std::abs(values[k]));
    max_abs = std::max(max_abs, std::abs(values[k]));
  }

  StabilizationResult result;
  result.epsilon_floor = min_abs;
  result.max_abs_h_delta = max_abs;
  result.ergodic_average = birkhoff_average(f, golden_angle(), kErgodicAverageN);
  result.lipschitz_bound = terrain.lipschitz_bound();
  result.lipschitz_gate = lipschitz_gate(geom);
  result.lipschitz_warning = result.lipschitz_bound > result.lipschitz_gate;
  if (result.lipschitz_warning) {
    result.diagnostics.push_back(
        "terrain slope bound " + fmt_g(result.lipschitz_bound) +
        " exceeds the geometry gate " + fmt_g(result.lipschitz_gate) +
        "; existence of a stabilizing angle is not guaranteed");
  }

  if (max_abs <= tol) {
    result.verdict = Verdict::everywhere_stable;
    return result;
  }

  std::vector<RootCertificate> roots;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = thetas[k];
    const double fa = values[k];
    const double b = (k + 1 < n) ? thetas[k + 1] : kTwoPi;
    const double fb = values[(k + 1) % n];

    if (fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
      const double theta_star = wrap_angle(bisect_root(f, a, fa, b, fb));
      roots.push_back({theta_star, std::abs(f(theta_star))});
    }
    if (std::abs(fa) <= tol) {
      // A grid sample already sits inside the tolerance band: refine by
      // minimizing |h_delta| over the two adjacent cells (even-multiplicity
      // zeros produce no sign change).
      const double lo = thetas[k] - kTwoPi / static_cast<double>(n);
      const double hi = thetas[k] + kTwoPi / static_cast<double>(n);
      const double theta_star = wrap_angle(golden_section_min_abs(f, lo, hi));
      roots.push_back({theta_star, std::abs(f(theta_star))});
    }
  }

  roots = merge_roots(std::move(roots));

  if (roots.empty()) {
    result.verdict = Verdict::none_found;
    result.diagnostics.push_back("no sign change at N = " + std::to_string(n) +
                                 "; min |h_delta| = " + fmt_g(min_abs));
    result.diagnostics.push_back("terrain Lipschitz bound " +
                                 fmt_g(result.lipschitz_bound) +
                                 "; consider raising N to refine the sweep");
    return result;
  }

  result.verdict = Verdict::angles_found;
  result.angles = std::move(roots);
  return result;
}

bool certify(const TableGeometry& geom, const Terrain& terrain,
             double theta_star, double tol) {
  return std::abs(equal_hover_rigid(geom, terrain, theta_star).hover) <= tol;
}

ErgodicCertificate ergodic_certificate(const TableGeometry& geom,
                                       const Terrain& terrain, double theta0,
                                       std::size_t n, double eps) {
  if (n < 1) throw std::invalid_argument("ergodic_certificate: N must be >= 1");
  check_domain(terrain, geom.radius());

  HeightProfile profile(geom, terrain);
  const auto f = [&profile](double theta) { return h_delta_abstract(profile, theta); };

  ErgodicCertificate cert;
  cert.theta0 = theta0;
  cert.n = n;
  cert.eps = eps;
  cert.birkhoff_avg = birkhoff_average(f, theta0, n);

  constexpr std::size_t kSweepN = 4096;
  double min_abs = std::numeric_limits<double>::infinity();
  double max_abs = 0.0;
  for (std::size_t k = 0; k < kSweepN; ++k) {
    const double v = std::abs(f(kTwoPi * static_cast<double>(k) / kSweepN));
    min_abs = std::min(min_abs, v);
    max_abs = std::max(max_abs, v);
  }
  cert.min_abs_h_delta = min_abs;
  cert.max_abs_h_delta = max_abs;
  cert.wobbles_everywhere = min_abs > eps;
  cert.average_within_eps = std::abs(cert.birkhoff_avg) <= eps;
  cert.contradiction = cert.wobbles_everywhere && cert.average_within_eps;
  return cert;
}

std::string to_text(const StabilizationResult& result) {
  std::ostringstream out;
  out << "verdict: " << to_string(result.verdict) << '\n';
  if (!result.angles.empty()) {
    out << "stabilizing angles (" << result.angles.size() << "):\n";
    for (const auto& root : result.angles) {
      out << "  theta = " << fmt_g17(root.theta)
          << "  residual = " << fmt_g(root.residual) << '\n';
    }
  }
  out << "epsilon_floor:    " << fmt_g(result.epsilon_floor) << '\n';
  out << "max |h_delta|:    " << fmt_g(result.max_abs_h_delta) << '\n';
  out << "ergodic average:  " << fmt_g(result.ergodic_average) << '\n';
  out << "lipschitz bound:  " << fmt_g(result.lipschitz_bound) << '\n';
  out << "lipschitz gate:   " << fmt_g(result.lipschitz_gate) << '\n';
  out << "lipschitz warning: " << (result.lipschitz_warning ? "yes" : "no") << '\n';
  for (const auto& message : result.diagnostics) out << "note: " << message << '\n';
  return out.str();
}

std::string to_text(const ErgodicCertificate& cert) {
  std::ostringstream out;
  out << "rotation theta0: " << fmt_g(cert.theta0) << " rad, N = " << cert.n
      << ", eps = " << fmt_g(cert.eps) << '\n';
  out << "birkhoff average of h_delta: " << fmt_g(cert.birkhoff_avg) << '\n';
  out << "min |h_delta| over sweep:    " << fmt_g(cert.min_abs_h_delta) << '\n';
  out << "max |h_delta| over sweep:    " << fmt_g(cert.max_abs_h_delta) << '\n';
  out << "wobbles everywhere (min > eps): "
      << (cert.wobbles_everywhere ? "yes" : "no") << '\n';
  out << "average within eps:             "
      << (cert.average_within_eps ? "yes" : "no") << '\n';
  if (cert.contradiction) {
    out << "contradiction: |h_delta| > eps everywhere yet its average is "
           "within eps of 0 -- impossible for a continuous function, so a "
           "zero must exist\n";
  } else if (!cert.wobbles_everywhere) {
    out << "no contradiction needed: some sample already has |h_delta| <= "
           "eps, a near-stable angle\n";
  } else {
    out << "no contradiction: the average stayed away from 0 (rational "
           "rotation or N too small to equidistribute)\n";
  }
  return out.str();
}

std::string roots_csv(const StabilizationResult& result) {
  std::ostringstream out;
  out << "theta,residual\n";
  for (const auto& root : result.angles) {
    out << fmt_g17(root.theta) << ',' << fmt_g17(root.residual) << '\n';
  }
  return out.str();
}

}  // namespace tableturn
