#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spectrum {

using Rational = mpq_class;

/// Accepts "p/q", "p" and finite decimals such as "0.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace spectrum
