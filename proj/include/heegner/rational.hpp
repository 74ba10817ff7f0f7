#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "heegner/errors.hpp"

namespace heegner {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Lowest-terms rendering: "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text) {
  auto is_integer = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer(text)) throw InvalidInput("not a rational: '" + text + "'");
    return Rational(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+')
    throw InvalidInput("not a rational: '" + text + "'");
  const BigInt d(den);
  if (d == 0) throw InvalidInput("zero denominator: '" + text + "'");
  return Rational(BigInt(num), d);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// p-adic valuation of a nonzero rational.
inline int valuation(const Rational& q, std::int64_t p) {
  if (q == 0) throw InvalidInput("valuation of zero is undefined");
  auto strip = [p](BigInt x) {
    int v = 0;
    if (x < 0) x = -x;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  return strip(boost::multiprecision::numerator(q)) -
         strip(boost::multiprecision::denominator(q));
}

}  // namespace heegner
