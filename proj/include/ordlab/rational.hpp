#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "ordlab/error.hpp"

namespace ordlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Formats as "a" for integers and "a/b" otherwise (canonical lowest terms).
std::string to_string(const Rational& r);

/// Parses "a", "a/b", or a plain decimal like "0.25" into an exact rational.
Rational rational_from_string(std::string_view text);

/// Nearest rational with denominator <= max_denominator, by continued
/// fractions. Returns nullopt when the best candidate misses x by more
/// than 1e-9 (the value is treated as irrational at our snapping scale).
std::optional<Rational> snap_to_rational(double x, long max_denominator = 1024);

}  // namespace ordlab
