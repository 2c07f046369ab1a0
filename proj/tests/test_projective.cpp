#include "doctest.h"

#include "bbkit/projective.hpp"

using namespace bbkit;

namespace {
ProjPoint pp(std::initializer_list<ExactScalar> xs) {
  return make_proj_point(PointE(xs));
}
}  // namespace

TEST_CASE("projective: representatives normalize by the first nonzero slot") {
  ProjPoint p = pp({ExactScalar(0), ExactScalar(2), ExactScalar(4)});
  CHECK(p.homog[0] == ExactScalar(0));
  CHECK(p.homog[1] == ExactScalar(1));
  CHECK(p.homog[2] == ExactScalar(2));

  CHECK(pp({ExactScalar(2), ExactScalar(4)}) == pp({ExactScalar(1), ExactScalar(2)}));
  CHECK_THROWS_AS(make_proj_point(PointE{ExactScalar(0), ExactScalar(0)}), DomainError);
  CHECK_THROWS_AS(make_proj_point(PointE{}), ShapeError);
}

TEST_CASE("projective: fixed components group equal weights") {
  auto comps = fixed_components(WeightVector{1, 3});
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].indices == std::vector<int>{1});
  CHECK(comps[0].weight == 1);
  CHECK(comps[0].dim == 0);
  CHECK(comps[1].indices == std::vector<int>{2});
  CHECK(comps[1].weight == 3);

  auto comps2 = fixed_components(WeightVector{1, 0, 0});
  REQUIRE(comps2.size() == 2);
  CHECK(comps2[0].indices == std::vector<int>{2, 3});
  CHECK(comps2[0].weight == 0);
  CHECK(comps2[0].dim == 1);
  CHECK(comps2[1].indices == std::vector<int>{1});
  CHECK(comps2[1].dim == 0);

  auto comps3 = fixed_components(WeightVector{5, 5, 5, 5});
  REQUIRE(comps3.size() == 1);
  CHECK(comps3[0].indices == std::vector<int>{1, 2, 3, 4});
  CHECK(comps3[0].dim == 3);  // the whole projective space

  CHECK_THROWS_AS(fixed_components(WeightVector{7}), ShapeError);
}

TEST_CASE("projective: limit components from extremal weights") {
  WeightVector l{1, 0, 0};
  ProjPoint p = pp({ExactScalar(1), ExactScalar(1), ExactScalar(1)});
  ProjMembership m = classify_proj(l, p);
  CHECK_FALSE(m.is_fixed);

  // Plus limit projects onto the minimal-weight slots among the support.
  CHECK(m.plus_component.indices == std::vector<int>{2, 3});
  CHECK(m.plus_component.weight == 0);
  CHECK(m.plus_limit == pp({ExactScalar(0), ExactScalar(1), ExactScalar(1)}));

  CHECK(m.minus_component.indices == std::vector<int>{1});
  CHECK(m.minus_component.weight == 1);
  CHECK(m.minus_limit == pp({ExactScalar(1), ExactScalar(0), ExactScalar(0)}));

  ProjMembership fixed = classify_proj(l, pp({ExactScalar(1), ExactScalar(0), ExactScalar(0)}));
  CHECK(fixed.is_fixed);
  CHECK(fixed.plus_limit == fixed.minus_limit);
  CHECK(fixed.plus_component == fixed.minus_component);
}

TEST_CASE("projective: tangent weights at a fixed point") {
  WeightVector l{1, 0, 0};
  auto comps = fixed_components(l);
  REQUIRE(comps.size() == 2);

  // comps[1] is the isolated point [1:0:0]; the normal directions carry
  // weight 0 - 1, twice.
  CHECK(tangent_weights_at_fixed(l, comps[1], 1) == WeightVector{-1, -1});

  // comps[0] covers slots {2,3}; at j = 2 the other directions weigh 1 - 0
  // and 0 - 0.
  CHECK(tangent_weights_at_fixed(l, comps[0], 2) == WeightVector{1, 0});

  CHECK_THROWS_AS(tangent_weights_at_fixed(l, comps[0], 1), DomainError);
}
