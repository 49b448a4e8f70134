#pragma once

#include <cstdio>
#include <string>

namespace wiretap {

/// Fixed numeric text form for CSV and key files: 17 significant digits.
inline std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace wiretap
