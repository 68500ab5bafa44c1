#pragma once

#include <cstdio>
#include <string>

namespace cqa::detail {

// CSV number format: 12 significant digits.
inline std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace cqa::detail
