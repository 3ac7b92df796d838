#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace genram {

/// Arbitrary-precision integer used for every exact identity check.
using ExactInt = boost::multiprecision::cpp_int;
/// Arbitrary-precision rational, always kept in lowest terms.
using ExactRat = boost::multiprecision::cpp_rational;

inline ExactRat make_rat(const ExactInt& num, const ExactInt& den) { return ExactRat(num, den); }

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const ExactInt& v) { return v.str(); }

inline std::string to_string(const ExactRat& v) {
  const ExactInt num = boost::multiprecision::numerator(v);
  const ExactInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const ExactRat& v) { return v.convert_to<double>(); }
inline double to_double(const ExactInt& v) { return v.convert_to<double>(); }

inline bool is_integer(const ExactRat& v) { return boost::multiprecision::denominator(v) == 1; }

}  // namespace genram
