#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mps {

/// Exact arbitrary-precision rational used for weights, row coefficients and
/// certificates.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p/q", an integer, or a finite decimal such as "0.25" or "-1.5e2"
/// into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    if (s.find('/') != std::string::npos) {
      Rational q(s, 10);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    long exponent = 0;
    if (epos != std::string::npos) exponent = std::stol(s.substr(epos + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant.erase(0, 1);
    }
    std::size_t dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      exponent -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed number");
    mpz_class num(digits, 10);
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational '" + s + "'");
  }
}

/// Exact rational closest to a double (binary expansion; exact for dyadic values).
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

}  // namespace mps
