#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace sawlab {

// Exact walk counts. Counts for Δ = 4 leave 64-bit range near n = 40.
using Count = boost::multiprecision::cpp_int;

// Natural logarithm of a positive integer without first converting the whole
// value to floating point. Returns -inf for zero.
long double log_count(const Count& value);

std::string to_decimal(const Count& value);
Count parse_count(std::string_view text);
Count ipow(const Count& base, unsigned exponent);

}  // namespace sawlab
