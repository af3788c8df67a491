#pragma once

#include <cstdio>
#include <string>

namespace dimer {

// 17 significant digits, fixed locale independent of iostream state
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace dimer
