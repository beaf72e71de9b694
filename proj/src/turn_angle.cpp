#include "tableturn/turn_angle.hpp"

#include <numbers>
#include <numeric>
#include <stdexcept>

namespace tableturn {

namespace {

// Denominators are capped so that cross-multiplied comparisons and sums fit
// comfortably in int64.
constexpr std::int64_t kMaxDenominator = 1'000'000'000;

}  // namespace

TurnAngle::TurnAngle(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) {
    throw std::invalid_argument("TurnAngle denominator must be positive");
  }
  // Wrap into [0, 1) first, then reduce.
  std::int64_t n = numerator % denominator;
  if (n < 0) n += denominator;
  const std::int64_t g = std::gcd(n, denominator);
  num_ = n / g;
  den_ = denominator / g;
  if (den_ > kMaxDenominator) {
    throw std::invalid_argument("TurnAngle denominator exceeds supported range");
  }
  // Evaluate in extended precision so the double is within 1 ulp of the
  // real value 2*pi*num/den.
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  radians_ = static_cast<double>(two_pi * static_cast<long double>(num_) /
                                 static_cast<long double>(den_));
}

TurnAngle TurnAngle::operator+(TurnAngle other) const {
  const std::int64_t g = std::gcd(den_, other.den_);
  const std::int64_t lcm = den_ / g * other.den_;
  const std::int64_t n = num_ * (lcm / den_) + other.num_ * (lcm / other.den_);
  return TurnAngle(n, lcm);
}

TurnAngle TurnAngle::operator-(TurnAngle other) const {
  const std::int64_t g = std::gcd(den_, other.den_);
  const std::int64_t lcm = den_ / g * other.den_;
  const std::int64_t n = num_ * (lcm / den_) - other.num_ * (lcm / other.den_);
  return TurnAngle(n, lcm);
}

TurnAngle TurnAngle::complement() const { return TurnAngle(-num_, den_); }

bool TurnAngle::operator<(TurnAngle other) const {
  // Values are in [0, 1) and denominators capped, so this cannot overflow.
  return num_ * other.den_ < other.num_ * den_;
}

std::string TurnAngle::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

TurnAngle TurnAngle::parse(const std::string& text) {
  std::size_t pos = 0;
  std::int64_t num = 0;
  try {
    num = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a turn fraction: \"" + text + "\"");
  }
  if (pos == text.size()) {
    return TurnAngle(num, 1);  // whole turns wrap to zero
  }
  if (text[pos] != '/') {
    throw std::invalid_argument("not a turn fraction: \"" + text + "\"");
  }
  const std::string den_part = text.substr(pos + 1);
  std::size_t den_pos = 0;
  std::int64_t den = 0;
  try {
    den = std::stoll(den_part, &den_pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a turn fraction: \"" + text + "\"");
  }
  if (den_pos != den_part.size() || den <= 0) {
    throw std::invalid_argument("not a turn fraction: \"" + text + "\"");
  }
  return TurnAngle(num, den);
}

}  // namespace tableturn
