#pragma once

#include <string>
#include <vector>

namespace tableturn {

struct Curve {
  std::string label;
  std::string color;         // any SVG color string
  std::vector<double> xs;    // sample positions (angles)
  std::vector<double> ys;    // values, same length as xs
};

/// One polyline per curve, viewBox spanning [0, 2*pi] x [min, max] of the
/// data, labels as text elements. Values are flipped internally so larger
/// values plot higher despite SVG's downward y axis.
std::string curves_svg(const std::vector<Curve>& curves);

void write_curves_svg(const std::string& path, const std::vector<Curve>& curves);

}  // namespace tableturn
