#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace dsr {

// All arithmetic in the analyzer is exact: stoichiometric coefficients,
// determinants, cycle stoichiometry and bisection probes are rationals.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) { return r.sign(); }

// "p" or "p/q" with q > 0; never emits a decimal point.
std::string to_string(const Rational& r);

// Accepts integers ("7", "-3"), fractions ("3/4", "-5/2") and decimals
// ("0.25"). Returns nullopt on malformed input or zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace dsr
