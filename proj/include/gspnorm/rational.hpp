#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gspnorm {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// q^k for integer k of either sign.
inline Rational rpow(long q, long k) {
  Integer p = boost::multiprecision::pow(Integer(q), static_cast<unsigned>(k < 0 ? -k : k));
  return k < 0 ? Rational(Integer(1), p) : Rational(p);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  const Integer den = boost::multiprecision::denominator(r);
  if (den != 1) s += "/" + den.str();
  return s;
}

}  // namespace gspnorm
