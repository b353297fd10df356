#pragma once

#include <cstdio>
#include <string>

namespace pauli {

/// 17 significant digits: enough for any double to round-trip exactly.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace pauli
