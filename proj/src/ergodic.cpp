#include "tableturn/ergodic.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tableturn/format.hpp"

namespace tableturn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Compensated summation keeps the running mean accurate to a few ulps even
// at N = 1e5+, where naive summation would eat the 1e-10 tolerances used to
// check the averaging identities.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double golden_angle() { return std::numbers::pi * (std::sqrt(5.0) - 1.0); }

double birkhoff_average(const CircleFunction& f, double theta0, std::size_t n) {
  if (n == 0) throw std::invalid_argument("birkhoff_average: n must be positive");
  KahanSum sum;
  for (std::size_t i = 1; i <= n; ++i) {
    const double theta = std::fmod(static_cast<double>(i) * theta0, kTwoPi);
    sum.add(f(theta));
  }
  return sum.value() / static_cast<double>(n);
}

double quadrature_average(const CircleFunction& f, std::size_t n) {
  if (n < 2) throw std::invalid_argument("quadrature_average: n must be >= 2");
  KahanSum sum;
  for (std::size_t k = 0; k < n; ++k) {
    sum.add(f(kTwoPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return sum.value() / static_cast<double>(n);
}

double orbit_average(const CircleFunction& f, TurnAngle step, double start) {
  if (step.is_zero()) return f(start);
  const std::int64_t p = step.numerator();
  const std::int64_t q = step.denominator();
  KahanSum sum;
  for (std::int64_t k = 0; k < q; ++k) {
    // Exact index arithmetic: the orbit of p/q visits each of the q grid
    // points exactly once because gcd(p, q) == 1.
    const std::int64_t idx = (k * (p % q)) % q;
    sum.add(f(start + kTwoPi * static_cast<double>(idx) / static_cast<double>(q)));
  }
  return sum.value() / static_cast<double>(q);
}

double verify_average_identity(const HeightProfile& profile, std::size_t n) {
  const double tau = profile.geometry().tau();
  const double mu = profile.geometry().mu();
  const auto avg = [&](Leg e) {
    return quadrature_average([&](double t) { return profile.leg_height(e, t); }, n);
  };
  return std::abs(mu * avg(Leg::B) + (1.0 - mu) * avg(Leg::D) -
                  tau * avg(Leg::A) - (1.0 - tau) * avg(Leg::C));
}

std::string describe(const SamplingScheme& scheme) {
  std::ostringstream out;
  if (const auto* rot = std::get_if<IrrationalRotation>(&scheme)) {
    out << "irrational rotation, theta0 = " << fmt_g(rot->theta0) << " rad";
  } else if (const auto* grid = std::get_if<UniformGrid>(&scheme)) {
    out << "uniform grid, " << grid->n << " points";
  } else {
    const auto& orbit = std::get<FiniteOrbit>(scheme);
    out << "finite orbit of rational rotation " << orbit.step.to_string()
        << " turn, start = " << fmt_g(orbit.start) << " rad";
  }
  return out.str();
}

double scheme_sample(const SamplingScheme& scheme, std::size_t i) {
  if (const auto* rot = std::get_if<IrrationalRotation>(&scheme)) {
    return std::fmod(static_cast<double>(i) * rot->theta0, kTwoPi);
  }
  if (const auto* grid = std::get_if<UniformGrid>(&scheme)) {
    if (grid->n == 0) throw std::invalid_argument("scheme_sample: empty grid");
    const std::size_t k = (i - 1) % grid->n;
    return kTwoPi * static_cast<double>(k) / static_cast<double>(grid->n);
  }
  const auto& orbit = std::get<FiniteOrbit>(scheme);
  if (orbit.step.is_zero()) return orbit.start;
  const std::int64_t p = orbit.step.numerator();
  const std::int64_t q = orbit.step.denominator();
  const std::int64_t idx =
      (static_cast<std::int64_t>(i % static_cast<std::size_t>(q)) * (p % q)) % q;
  return orbit.start + kTwoPi * static_cast<double>(idx) / static_cast<double>(q);
}

AverageReport convergence_report(const CircleFunction& f,
                                 const SamplingScheme& scheme,
                                 std::vector<std::size_t> n_list,
                                 std::size_t reference_n) {
  if (n_list.empty()) throw std::invalid_argument("convergence_report: empty n_list");
  for (std::size_t j = 0; j < n_list.size(); ++j) {
    if (n_list[j] == 0 || (j > 0 && n_list[j] <= n_list[j - 1])) {
      throw std::invalid_argument("convergence_report: n_list must be strictly increasing");
    }
  }

  AverageReport report;
  report.scheme = scheme;
  report.n_values = std::move(n_list);
  report.partial_averages.reserve(report.n_values.size());

  if (std::holds_alternative<UniformGrid>(scheme)) {
    // Partial sums of a uniform grid are not meaningful averages; report the
    // full quadrature value at each requested resolution instead.
    for (std::size_t n : report.n_values) {
      report.partial_averages.push_back(quadrature_average(f, n < 2 ? 2 : n));
    }
  } else {
    KahanSum sum;
    std::size_t taken = 0;
    for (std::size_t n : report.n_values) {
      while (taken < n) {
        ++taken;
        sum.add(f(scheme_sample(scheme, taken)));
      }
      report.partial_averages.push_back(sum.value() / static_cast<double>(taken));
    }
  }

  report.limit_estimate = report.partial_averages.back();
  if (const auto* orbit = std::get_if<FiniteOrbit>(&scheme)) {
    report.limit_estimate = orbit_average(f, orbit->step, orbit->start);
  }
  report.quadrature_reference = quadrature_average(f, reference_n);
  return report;
}

AverageReport convergence_report(const CircleFunction& f, double theta0,
                                 std::vector<std::size_t> n_list) {
  return convergence_report(f, SamplingScheme{IrrationalRotation{theta0}},
                            std::move(n_list));
}

std::string average_report_csv(const AverageReport& report) {
  std::ostringstream out;
  out << "N,partial_average,reference\n";
  for (std::size_t j = 0; j < report.n_values.size(); ++j) {
    out << report.n_values[j] << ',' << fmt_g17(report.partial_averages[j]) << ','
        << fmt_g17(report.quadrature_reference) << '\n';
  }
  return out.str();
}

std::string average_report_text(const AverageReport& report) {
  std::ostringstream out;
  out << "sampling: " << describe(report.scheme) << '\n';
  for (std::size_t j = 0; j < report.n_values.size(); ++j) {
    out << "  N = " << report.n_values[j]
        << "  average = " << fmt_g(report.partial_averages[j]) << '\n';
  }
  out << "limit estimate:       " << fmt_g(report.limit_estimate) << '\n';
  out << "quadrature reference: " << fmt_g(report.quadrature_reference) << '\n';
  out << "gap:                  "
      << fmt_g(std::abs(report.limit_estimate - report.quadrature_reference)) << '\n';
  return out.str();
}

}  // namespace tableturn
