#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bbkit/exact.hpp"

namespace bbkit {

// Integer weights (l_1,...,l_n) of a diagonal C* action on C^n:
// lambda . z = (lambda^{l_1} z_1, ..., lambda^{l_n} z_n).
// Coordinates are 1-based everywhere in this library.
struct WeightVector {
  std::vector<long long> l;

  WeightVector() = default;
  explicit WeightVector(std::vector<long long> weights) : l(std::move(weights)) {}
  WeightVector(std::initializer_list<long long> weights) : l(weights) {}

  int n() const { return static_cast<int>(l.size()); }
  long long at(int k) const { return l.at(static_cast<std::size_t>(k) - 1); }  // 1-based

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.l == b.l; }
};

using PointE = std::vector<ExactScalar>;               // exact backend
using PointC = std::vector<std::complex<double>>;      // float backend (flow module)

// Index sets partitioning {1..n} by weight sign.
struct SignDecomposition {
  std::vector<int> J0, Jplus, Jminus;  // 1-based, ascending
  int beta0 = 0, betaPlus = 0, betaMinus = 0;
};

// Limits of lambda . z as lambda -> 0 (plus) and lambda -> infinity (minus),
// when they exist. is_fixed implies both limits equal the point itself.
template <class Scalar>
struct BasicStratumMembership {
  std::optional<std::vector<Scalar>> plus_limit;
  std::optional<std::vector<Scalar>> minus_limit;
  bool is_fixed = false;
};
using StratumMembership = BasicStratumMembership<ExactScalar>;
using StratumMembershipC = BasicStratumMembership<std::complex<double>>;

// lambda . z, coordinate k scaled by lambda^{l_k}. Throws DomainError for
// lambda = 0 and ShapeError on length mismatch.
PointE act(const ExactScalar& lambda, const WeightVector& w, const PointE& z);
// Float backend: powers via repeated squaring (deterministic, no std::pow).
PointC act(std::complex<double> lambda, const WeightVector& w, const PointC& z);

SignDecomposition sign_decompose(const WeightVector& w);

// The plus limit exists iff z_k = 0 for every k with l_k < 0, and equals z
// with the positive-weight coordinates zeroed; minus is the mirror image.
// A float coordinate counts as zero only when it is exactly +-0.0.
StratumMembership classify_point(const WeightVector& w, const PointE& z);
StratumMembershipC classify_point(const WeightVector& w, const PointC& z);

}  // namespace bbkit
