#pragma once

#include <cstdint>
#include <string>

namespace tableturn {

/// An angle held as an exact reduced fraction of a full turn, wrapped into
/// [0, 1). Keeping leg angles rational makes every composed rotation of the
/// table land back on a finite set of exact angles instead of drifting in
/// floating point.
class TurnAngle {
 public:
  TurnAngle() = default;  // zero turns
  TurnAngle(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  /// Value as a fraction of a turn, in [0, 1).
  double turns() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// 2*pi*numerator/denominator, in [0, 2*pi).
  double radians() const { return radians_; }

  bool is_zero() const { return num_ == 0; }

  // Arithmetic is modulo one full turn and stays exact.
  TurnAngle operator+(TurnAngle other) const;
  TurnAngle operator-(TurnAngle other) const;
  TurnAngle complement() const;  // one turn minus this, mod 1

  bool operator==(TurnAngle other) const {
    return num_ == other.num_ && den_ == other.den_;
  }
  bool operator!=(TurnAngle other) const { return !(*this == other); }
  bool operator<(TurnAngle other) const;
  bool operator>(TurnAngle other) const { return other < *this; }

  std::string to_string() const;  // canonical "p/q"

  /// Parses "p/q" (or a bare integer, which wraps to 0). Throws
  /// std::invalid_argument on anything else.
  static TurnAngle parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double radians_ = 0.0;
};

}  // namespace tableturn
