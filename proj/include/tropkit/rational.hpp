#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace tropkit {

// Expression templates are switched off so that `auto` always binds to a value.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return den(x) == 1; }

Int floor_int(const Rat& x);
Int ceil_int(const Rat& x);

/// Nonnegative generator of the subgroup aZ + bZ of Q.
Rat rat_gcd(const Rat& a, const Rat& b);

/// Parses "p/q", "p" or "-p/q"; throws std::invalid_argument on junk or q = 0.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" (lowest terms, q > 0) otherwise.
std::string to_string(const Rat& x);

}  // namespace tropkit
