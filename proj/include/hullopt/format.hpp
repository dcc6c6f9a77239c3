#pragma once

#include <cstdio>
#include <string>

namespace hullopt {

/// printf "%.9g": nine significant digits, trailing zeros trimmed.
inline std::string format_sig9(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

}  // namespace hullopt
