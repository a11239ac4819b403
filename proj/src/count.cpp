#include "sawlab/count.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace sawlab {

long double log_count(const Count& value) {
  if (value.is_zero()) return -std::numeric_limits<long double>::infinity();
  if (value.sign() < 0) throw std::domain_error("log_count: negative value");
  const auto top_bit = boost::multiprecision::msb(value);
  if (top_bit < 64) {
    return std::log(static_cast<long double>(value.convert_to<std::uint64_t>()));
  }
  const unsigned shift = static_cast<unsigned>(top_bit) - 63;
  const auto mantissa = static_cast<Count>(value >> shift).convert_to<std::uint64_t>();
  return std::log(static_cast<long double>(mantissa)) +
         static_cast<long double>(shift) * std::log(2.0L);
}

std::string to_decimal(const Count& value) { return value.str(); }

Count parse_count(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal integer: " + std::string(text));
    }
  }
  return Count(std::string(text));
}

Count ipow(const Count& base, unsigned exponent) {
  Count result = 1;
  Count b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

}  // namespace sawlab
