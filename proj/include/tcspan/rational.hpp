#pragma once

#include <string>

#include <gmpxx.h>

namespace tcspan {

using Rational = mpq_class;

/// Decimal rendering truncated toward zero after `digits` fractional digits.
std::string to_decimal(const Rational& q, unsigned digits = 20);

/// Nearest long double (via GMP's float type, 128-bit mantissa).
long double to_long_double(const Rational& q);

}  // namespace tcspan
