#pragma once

#include <vector>

#include "bbkit/weights_core.hpp"

namespace bbkit {

// Point of P(C^n) in homogeneous coordinates, normalized so the first nonzero
// coordinate is 1. Equality of ProjPoint is equality of lines.
struct ProjPoint {
  PointE homog;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.homog == b.homog; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
};

// Normalizes; throws DomainError when all coordinates vanish, ShapeError for
// empty input.
ProjPoint make_proj_point(PointE homog);

// Connected fixed component of the induced action on P(C^n): the projective
// coordinate subspace spanned by all slots sharing one weight value.
struct FixedComponent {
  std::vector<int> indices;  // 1-based, ascending
  long long weight = 0;      // the common weight kappa
  int dim = 0;               // |indices| - 1

  friend bool operator==(const FixedComponent& a, const FixedComponent& b) {
    return a.indices == b.indices && a.weight == b.weight && a.dim == b.dim;
  }
};

// One component per distinct weight value, sorted ascending by weight; their
// index sets partition {1..n}. Requires n >= 2 (ShapeError otherwise).
std::vector<FixedComponent> fixed_components(const WeightVector& w);

// Both limits always exist on projective space: the plus limit is the
// projection of p onto its minimal-weight nonzero slots, minus onto the
// maximal-weight ones.
struct ProjMembership {
  FixedComponent plus_component;
  ProjPoint plus_limit;
  FixedComponent minus_component;
  ProjPoint minus_limit;
  bool is_fixed = false;
};

ProjMembership classify_proj(const WeightVector& w, const ProjPoint& p);

// Weights of the isotropy action on T_[e_j] P(C^n) in the affine chart at
// slot j of component c: the multiset {l_k - kappa : k != j}, in index order.
// Throws DomainError when j is not in c.indices.
WeightVector tangent_weights_at_fixed(const WeightVector& w, const FixedComponent& c, int j);

}  // namespace bbkit
