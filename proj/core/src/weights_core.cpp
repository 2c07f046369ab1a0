#include "bbkit/weights_core.hpp"

namespace bbkit {

namespace {

std::complex<double> powi(std::complex<double> base, long long e) {
  if (e == 0) return {1.0, 0.0};
  bool invert = e < 0;
  unsigned long long m = invert ? static_cast<unsigned long long>(-(e + 1)) + 1ull
                                : static_cast<unsigned long long>(e);
  std::complex<double> acc{1.0, 0.0};
  std::complex<double> b = base;
  while (m > 0) {
    if (m & 1ull) acc *= b;
    b *= b;
    m >>= 1ull;
  }
  return invert ? 1.0 / acc : acc;
}

template <class Scalar>
bool scalar_is_zero(const Scalar& s) {
  return s == Scalar(0);
}
template <>
bool scalar_is_zero(const ExactScalar& s) {
  return s.is_zero();
}

template <class Scalar>
BasicStratumMembership<Scalar> classify_impl(const WeightVector& w,
                                             const std::vector<Scalar>& z) {
  if (static_cast<int>(z.size()) != w.n())
    throw ShapeError("classify_point: point has length " + std::to_string(z.size()) +
                     ", weights have length " + std::to_string(w.n()));
  bool plus_ok = true, minus_ok = true, fixed = true;
  for (int k = 1; k <= w.n(); ++k) {
    const bool zero = scalar_is_zero(z[k - 1]);
    if (w.at(k) < 0 && !zero) plus_ok = false;
    if (w.at(k) > 0 && !zero) minus_ok = false;
    if (w.at(k) != 0 && !zero) fixed = false;
  }
  BasicStratumMembership<Scalar> out;
  out.is_fixed = fixed;
  if (plus_ok) {
    std::vector<Scalar> lim = z;
    for (int k = 1; k <= w.n(); ++k)
      if (w.at(k) > 0) lim[k - 1] = Scalar(0);
    out.plus_limit = std::move(lim);
  }
  if (minus_ok) {
    std::vector<Scalar> lim = z;
    for (int k = 1; k <= w.n(); ++k)
      if (w.at(k) < 0) lim[k - 1] = Scalar(0);
    out.minus_limit = std::move(lim);
  }
  return out;
}

}  // namespace

PointE act(const ExactScalar& lambda, const WeightVector& w, const PointE& z) {
  if (lambda.is_zero()) throw DomainError("act: lambda must be nonzero");
  if (static_cast<int>(z.size()) != w.n())
    throw ShapeError("act: point has length " + std::to_string(z.size()) +
                     ", weights have length " + std::to_string(w.n()));
  PointE out(z.size());
  for (int k = 1; k <= w.n(); ++k) out[k - 1] = pow(lambda, w.at(k)) * z[k - 1];
  return out;
}

PointC act(std::complex<double> lambda, const WeightVector& w, const PointC& z) {
  if (lambda == std::complex<double>(0.0, 0.0))
    throw DomainError("act: lambda must be nonzero");
  if (static_cast<int>(z.size()) != w.n())
    throw ShapeError("act: point has length " + std::to_string(z.size()) +
                     ", weights have length " + std::to_string(w.n()));
  PointC out(z.size());
  for (int k = 1; k <= w.n(); ++k) out[k - 1] = powi(lambda, w.at(k)) * z[k - 1];
  return out;
}

SignDecomposition sign_decompose(const WeightVector& w) {
  SignDecomposition d;
  for (int k = 1; k <= w.n(); ++k) {
    if (w.at(k) == 0)
      d.J0.push_back(k);
    else if (w.at(k) > 0)
      d.Jplus.push_back(k);
    else
      d.Jminus.push_back(k);
  }
  d.beta0 = static_cast<int>(d.J0.size());
  d.betaPlus = static_cast<int>(d.Jplus.size());
  d.betaMinus = static_cast<int>(d.Jminus.size());
  return d;
}

StratumMembership classify_point(const WeightVector& w, const PointE& z) {
  return classify_impl(w, z);
}

StratumMembershipC classify_point(const WeightVector& w, const PointC& z) {
  return classify_impl(w, z);
}

}  // namespace bbkit
