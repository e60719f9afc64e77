#pragma once

#include <cstdio>
#include <string>

namespace ctwalk {

// Shortest fixed formatting that round-trips doubles; CSV and reports go
// through this so repeated runs are byte-identical.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

} // namespace ctwalk
