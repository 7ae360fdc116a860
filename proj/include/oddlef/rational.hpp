#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace oddlef {

// Exact rational with arbitrary-precision integer parts. The backing type
// keeps the fraction normalized (lowest terms, positive denominator), which
// is exactly the invariant the series calculus relies on.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r);

BigInt factorial(unsigned n);

}  // namespace oddlef
