#pragma once

#include <string>

namespace surfcap {

/// Numeric text with 12 significant digits (%.12g).
std::string format_number(double x);

/// x rounded to 12 significant digits; used before JSON serialization.
double round_significant(double x);

} // namespace surfcap
