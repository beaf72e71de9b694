#include "tableturn/svg.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tableturn/format.hpp"

namespace tableturn {

std::string curves_svg(const std::vector<Curve>& curves) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& curve : curves) {
    if (curve.xs.size() != curve.ys.size()) {
      throw std::invalid_argument("curves_svg: xs/ys length mismatch for '" +
                                  curve.label + "'");
    }
    for (double y : curve.ys) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(y_min <= y_max)) {  // no data at all
    y_min = -1.0;
    y_max = 1.0;
  }
  if (y_max - y_min < 1e-12) {  // flat data: give the box some height
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double height = y_max - y_min;
  // Flip a value into SVG's downward-y coordinates within the same box.
  const auto flip = [&](double y) { return y_max + y_min - y; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 "
      << fmt_g(y_min) << ' ' << fmt_g(kTwoPi) << ' ' << fmt_g(height)
      << "\" preserveAspectRatio=\"none\">\n";

  const double stroke = height / 200.0;
  const double font = height / 18.0;

  // Zero axis for orientation, when it is inside the box.
  if (y_min <= 0.0 && 0.0 <= y_max) {
    out << "  <line x1=\"0\" y1=\"" << fmt_g(flip(0.0)) << "\" x2=\""
        << fmt_g(kTwoPi) << "\" y2=\"" << fmt_g(flip(0.0))
        << "\" stroke=\"#999999\" stroke-width=\"" << fmt_g(0.5 * stroke)
        << "\" stroke-dasharray=\"" << fmt_g(4.0 * stroke) << "\"/>\n";
  }

  for (const auto& curve : curves) {
    out << "  <polyline fill=\"none\" stroke=\"" << curve.color
        << "\" stroke-width=\"" << fmt_g(stroke) << "\" points=\"";
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
      if (i > 0) out << ' ';
      out << fmt_g(curve.xs[i]) << ',' << fmt_g(flip(curve.ys[i]));
    }
    out << "\"/>\n";
  }

  // Legend: one label per curve, stacked in the top-left of the box.
  double label_y = y_max - 1.5 * font;
  for (const auto& curve : curves) {
    out << "  <text x=\"" << fmt_g(0.05) << "\" y=\"" << fmt_g(flip(label_y))
        << "\" fill=\"" << curve.color << "\" font-size=\"" << fmt_g(font)
        << "\">" << curve.label << "</text>\n";
    label_y -= 1.5 * font;
  }

  out << "</svg>\n";
  return out.str();
}

void write_curves_svg(const std::string& path, const std::vector<Curve>& curves) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << curves_svg(curves);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace tableturn
