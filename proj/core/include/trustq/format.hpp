#pragma once

#include <string>

namespace trustq {

inline constexpr int kDefaultPrecision = 6;

// Fixed-point rendering with `precision` fractional digits, correctly rounded
// (ties to even on the exact binary value), '.' separator, no grouping and
// independent of the global locale. "-0.000000" is normalized to "0.000000".
std::string format_fixed(double value, int precision = kDefaultPrecision);

// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

}  // namespace trustq
