#include "surfcap/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace surfcap {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_significant(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

} // namespace surfcap
