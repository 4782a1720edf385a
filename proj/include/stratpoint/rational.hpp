#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace stratpoint {

/// Exact rational scalar. GMP keeps every value canonical (reduced, positive
/// denominator), so equality is structural.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what)
      : std::invalid_argument(what) {}
};

inline int sign(const Rational& v) { return v.sign(); }

inline double to_double(const Rational& v) { return v.convert_to<double>(); }

inline std::vector<double> to_double(const Vector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(to_double(e));
  return out;
}

/// Exact conversion of a finite binary64 value.
inline Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value");
  if (v == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // mant * 2^53 is an integer for every binary64 value.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(scaled)};
  Integer pow2 = Integer(1) << std::abs(exp);
  if (exp >= 0) return r * Rational(pow2);
  return r / Rational(pow2);
}

/// Simplest rational within `tol` of `v` (Stern-Brocot descent via continued
/// fractions). Falls back to the exact binary64 value when no such fraction
/// with denominator <= max_den exists.
inline Rational rationalize(double v, double tol = 1e-9,
                            std::int64_t max_den = 1'000'000) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value");
  const Rational target = from_double(v);
  const Rational eps = from_double(tol);
  Rational x = target;
  bool neg = x < 0;
  if (neg) x = -x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    Integer a = boost::multiprecision::numerator(x) /
                boost::multiprecision::denominator(x);
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Rational cand(p2, q2);
    if (neg) cand = -cand;
    if (abs(cand - target) <= eps) return cand;
    Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = 1 / frac;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return target;
}

/// Parses "3", "-3/7", "0.125", "-1.5e-3". Decimals convert exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    const auto b = t.find_first_not_of(" \t\r\n");
    const auto e = t.find_last_not_of(" \t\r\n");
    t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw ParseError("empty number");
  auto parse_int = [&](const std::string& t) {
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) ++i;
    if (i == t.size()) throw ParseError("malformed number '" + s + "'");
    for (std::size_t k = i; k < t.size(); ++k)
      if (t[k] < '0' || t[k] > '9')
        throw ParseError("malformed number '" + s + "'");
    // A leading zero would make the mpz constructor read the digits as octal.
    std::size_t first = t.find_first_not_of('0', i);
    if (first == std::string::npos) return Integer(0);
    const std::string digits = t.substr(first);
    return t[0] == '-' ? Integer(-Integer(digits)) : Integer(digits);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
  }
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(e + 1), &used);
      if (used != s.size() - e - 1) throw ParseError("malformed exponent");
    } catch (const std::logic_error&) {
      throw ParseError("malformed number '" + s + "'");
    }
  }
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    std::string frac = mant.substr(dot + 1);
    std::string whole = mant.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty()) frac = "0";
    mant = whole + frac;
    exp10 -= static_cast<long>(frac.size());
  }
  Rational r{parse_int(mant)};
  Integer p10 = boost::multiprecision::pow(Integer(10),
                                           static_cast<unsigned>(std::labs(exp10)));
  return exp10 >= 0 ? r * Rational(p10) : r / Rational(p10);
}

/// "n" for integers, "n/d" otherwise.
inline std::string format_rational(const Rational& v) { return v.str(); }

}  // namespace stratpoint
