#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "tableturn/touchdown.hpp"
#include "tableturn/turn_angle.hpp"

namespace tableturn {

using CircleFunction = std::function<double(double)>;

/// 2*pi*(sqrt(5)-1)/2: the rotation with the best Diophantine properties,
/// hence the lowest-discrepancy orbit a single angle can buy.
double golden_angle();

/// (1/N) * sum_{i=1..N} f(i*theta0 mod 2*pi). Converges to the circle
/// average when theta0 is an irrational fraction of a turn; in doubles that
/// holds for every practical N since the implicit denominator of theta0 is
/// astronomical.
double birkhoff_average(const CircleFunction& f, double theta0, std::size_t n);

/// Uniform-grid average (1/N) * sum_k f(2*pi*k/N): the periodic trapezoid
/// rule, spectrally accurate for smooth f. Requires N >= 2.
double quadrature_average(const CircleFunction& f, std::size_t n);

/// Exact average over the q-point orbit {start + 2*pi*k*p/q}: integration
/// against the invariant measure of the rational rotation p/q.
double orbit_average(const CircleFunction& f, TurnAngle step, double start);

/// Quadrature averages of h_A..h_D combined as mu*H_B + (1-mu)*H_D
/// - tau*H_A - (1-tau)*H_C; the absolute value is |avg h_delta| and is
/// ~1e-15 for smooth profiles because all four averages coincide by the
/// translation property.
double verify_average_identity(const HeightProfile& profile, std::size_t n);

// How angles get sampled for averaging.
struct IrrationalRotation {
  double theta0 = 0.0;  // radians
};
struct UniformGrid {
  std::size_t n = 0;
};
struct FiniteOrbit {
  TurnAngle step;
  double start = 0.0;
};
using SamplingScheme = std::variant<IrrationalRotation, UniformGrid, FiniteOrbit>;

std::string describe(const SamplingScheme& scheme);

/// The i-th sample angle of a rotation scheme (i >= 1).
double scheme_sample(const SamplingScheme& scheme, std::size_t i);

struct AverageReport {
  SamplingScheme scheme;
  std::vector<std::size_t> n_values;
  std::vector<double> partial_averages;
  double limit_estimate = 0.0;        // last partial (or the exact orbit average)
  double quadrature_reference = 0.0;  // uniform-grid average of the same f
};

/// Running partial averages at the requested checkpoint sizes (strictly
/// increasing), all from one pass over the orbit.
AverageReport convergence_report(const CircleFunction& f,
                                 const SamplingScheme& scheme,
                                 std::vector<std::size_t> n_list,
                                 std::size_t reference_n = 4096);

AverageReport convergence_report(const CircleFunction& f, double theta0,
                                 std::vector<std::size_t> n_list);

std::string average_report_csv(const AverageReport& report);
std::string average_report_text(const AverageReport& report);

}  // namespace tableturn
