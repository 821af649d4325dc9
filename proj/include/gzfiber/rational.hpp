#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace gzfiber {

// GMP-backed rationals are always kept in lowest terms with a positive
// denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Accepts "p", "-p" and "p/q" with q > 0.  Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

inline Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace gzfiber
