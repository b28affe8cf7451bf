// Exact rational scalar used throughout the reduction pipeline.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>
#include <string_view>

namespace shbif {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline double abs_val(double x) { return std::fabs(x); }
inline Rational abs_val(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Parses a plain decimal literal ("9", "-0.25", "9.3e-1") into an exact rational.
// Throws std::invalid_argument on anything else.
Rational rational_from_decimal(std::string_view text);

// Lossless decimal-integer strings, the wire format for rational coefficients.
inline std::string num_str(const Rational& q) { return numerator(q).str(); }
inline std::string den_str(const Rational& q) { return denominator(q).str(); }

// Inverse of the num_str/den_str pair. Throws std::invalid_argument on a zero
// denominator or malformed integer text.
Rational rational_from_parts(const std::string& num, const std::string& den);

}  // namespace shbif
