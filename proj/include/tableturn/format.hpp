#pragma once

#include <cstdio>
#include <string>

namespace tableturn {

/// Shortest-round-trip style formatting: 17 significant digits reproduce the
/// double bit-for-bit on parse, which keeps every emitted file deterministic.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Human-facing formatting for reports and messages.
inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace tableturn
