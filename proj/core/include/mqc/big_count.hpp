#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mqc {

/// Exact non-negative integer for ranks, degeneracies and cumulative
/// multiplicities. Values up to 2^N with N ~ 10^4 stay exact.
using BigCount = boost::multiprecision::cpp_int;

/// Natural log of a BigCount; -inf for zero. Splits off the high 53 bits so
/// the result stays accurate for values far beyond double range.
inline double log_big(const BigCount& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  const unsigned bits = boost::multiprecision::msb(x);
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 52;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) +
         static_cast<double>(shift) * std::numbers::ln2;
}

inline std::string to_decimal(const BigCount& x) { return x.str(); }

inline BigCount pow2_big(int exponent) { return BigCount(1) << exponent; }

}  // namespace mqc
