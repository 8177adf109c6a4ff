#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

#include "ctbp/errors.hpp"

namespace ctbp {

using Rational = mpq_class;

// mpq_set_d is exact: every finite double is a dyadic rational.
inline Rational to_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

inline Rational to_rational(const Rational& x) { return x; }

/// Round to nearest (get_d truncates toward zero).
inline double to_double(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return d;
  const double e = std::nextafter(d, q > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(e)) return d;
  Rational ed(e), dd(d);
  return abs(Rational(ed - q)) < abs(Rational(dd - q)) ? e : d;
}
inline double to_double(double x) { return x; }

inline int sign_of(const Rational& q) { return sgn(q); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }

/// Parses "12", "-3.25", "1e-3", "2/7" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  std::string s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t p = 0;
  while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  s = s.substr(p);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational a = parse_rational(s.substr(0, slash));
    Rational b = parse_rational(s.substr(slash + 1));
    if (b == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
    Rational r = a / b;
    r.canonicalize();
    return r;
  }
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  mpz_class digits = 0;
  long scale = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (dot) --scale;
      any = true;
    } else if (ch == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw Error(ErrorKind::InvalidInput, "not a number: '" + text + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw Error(ErrorKind::InvalidInput, "not a number: '" + text + "'");
    std::string ex = s.substr(i + 1);
    if (ex.empty()) throw Error(ErrorKind::InvalidInput, "bad exponent in '" + text + "'");
    size_t used = 0;
    long e = 0;
    try {
      e = std::stol(ex, &used);
    } catch (...) {
      throw Error(ErrorKind::InvalidInput, "bad exponent in '" + text + "'");
    }
    if (used != ex.size() || e > 4000 || e < -4000)
      throw Error(ErrorKind::InvalidInput, "bad exponent in '" + text + "'");
    scale += e;
  }
  mpz_class ten = 10, pw;
  mpz_pow_ui(pw.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(digits, pw) : Rational(digits * pw);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace ctbp
