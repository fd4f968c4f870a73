#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace grouplaw {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigint_pow(const BigInt& base, unsigned long long exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// Exact nonnegative rational. Kept unreduced by default (denominators carry
// meaning, e.g. |G|^n); reduce() and value comparisons are exact.
struct Rational {
  BigInt num = 0;
  BigInt den = 1;

  Rational() = default;
  Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {}

  Rational reduced() const {
    BigInt g = boost::multiprecision::gcd(num, den);
    if (g == 0) return *this;
    return Rational(num / g, den / g);
  }

  double to_double() const { return num.convert_to<double>() / den.convert_to<double>(); }

  std::string str() const { return num.str() + "/" + den.str(); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num * b.den <= b.num * a.den;
  }
};

}  // namespace grouplaw
