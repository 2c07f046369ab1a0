#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "bbkit/errors.hpp"

namespace bbkit {

using BigInt = boost::multiprecision::cpp_int;
// cpp_rational keeps fractions in lowest terms with positive denominator,
// so equality of values is equality of representations.
using Rational = boost::multiprecision::cpp_rational;

// Gaussian rational a + bi. The coefficient field for every exact computation;
// floating point appears only in the flow module.
struct ExactScalar {
  Rational re;
  Rational im;

  ExactScalar() : re(0), im(0) {}
  ExactScalar(int v) : re(v), im(0) {}      // NOLINT: implicit by design
  ExactScalar(Rational r) : re(std::move(r)), im(0) {}
  ExactScalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a) { return {-a.re, -a.im}; }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }

  ExactScalar conj() const { return {re, -im}; }
  Rational abs2() const { return re * re + im * im; }

  ExactScalar inv() const {
    if (is_zero()) throw DomainError("division by zero ExactScalar");
    Rational d = abs2();
    return {re / d, -im / d};
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inv();
  }

  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
};

// base^e by repeated squaring; negative e inverts first. pow(0, e<=0) throws.
ExactScalar pow(const ExactScalar& base, long long e);

// Canonical text form: "0", "3/2", "-1/4i", "3/2+1/4i", "1-i". Round-trips
// through the polynomial grammar.
std::string to_string(const ExactScalar& s);
std::string to_string(const Rational& r);

}  // namespace bbkit
