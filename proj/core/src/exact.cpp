#include "bbkit/exact.hpp"

namespace bbkit {

ExactScalar pow(const ExactScalar& base, long long e) {
  if (e == 0) {
    if (base.is_zero()) throw DomainError("pow(0, 0) is undefined");
    return ExactScalar(1);
  }
  ExactScalar b = base;
  if (e < 0) {
    b = base.inv();  // throws on zero
    e = -e;
  }
  ExactScalar acc(1);
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const ExactScalar& s) {
  if (s.is_zero()) return "0";
  std::string out;
  if (s.re != 0) out += s.re.str();
  if (s.im != 0) {
    if (s.im == 1) {
      out += s.re != 0 ? "+i" : "i";
    } else if (s.im == -1) {
      out += "-i";
    } else {
      if (s.re != 0 && s.im > 0) out += "+";
      out += s.im.str() + "i";
    }
  }
  return out;
}

}  // namespace bbkit
