#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace heb {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "12", "-3", "0.125", "7/4". Throws heb::Error on malformed text.
Rational parse_rational(std::string_view text);

/// Exact binary value of a finite double.
Rational rational_from_double(double v);

/// Best rational approximation with denominator at most max_den (continued fractions).
Rational approximate(double v, long max_den);

inline double to_double(const Rational& r) { return r.get_d(); }

std::vector<double> to_doubles(const std::vector<Rational>& v);

/// Rescales a rational vector to the primitive integer vector with the same direction.
std::vector<Integer> primitive_integer(const std::vector<Rational>& v);

}  // namespace heb
