#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ptower
{

// Exact value of a decimal literal such as "2.665", "-1.5e-3" or "42".
// Throws domain_error on malformed input.
mpq_class parse_decimal(std::string_view text);

// "1.2500e+00" -> "1.25e+00", "3.000e-01" -> "3e-01".
std::string trim_mantissa_zeros(const std::string &sci);

} // namespace ptower
