#pragma once

#include <cstdio>
#include <string>

namespace cmup::io {

// 17 significant digits round-trip IEEE doubles exactly and print identically
// across platforms for identical bit patterns.
inline std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace cmup::io
