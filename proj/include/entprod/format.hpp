#pragma once

#include <cstdio>
#include <string>

namespace entprod {

/// Round-trip exact scientific notation.
inline std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

}  // namespace entprod
