#include "doctest.h"

#include <algorithm>

#include "bbkit/blowup.hpp"

using namespace bbkit;

namespace {
PointE pe(std::initializer_list<ExactScalar> xs) { return PointE(xs); }
ExactScalar q(long num, long den = 1) { return ExactScalar(Rational(num, den)); }
}  // namespace

TEST_CASE("blowup: space construction validates the center") {
  CHECK_THROWS_AS(BlowupSpace(0, 0), ShapeError);
  CHECK_THROWS_AS(BlowupSpace(3, 3), ShapeError);
  CHECK_THROWS_AS(BlowupSpace(3, -1), ShapeError);

  BlowupSpace b(3, 0);
  CHECK(b.charts() == std::vector<int>{1, 2, 3});
  CHECK_FALSE(b.trivial());

  BlowupSpace line(2, 1);
  CHECK(line.charts() == std::vector<int>{2});
  CHECK(line.trivial());
}

TEST_CASE("blowup: blowdown multiplies off-chart slots by the chart coordinate") {
  BlowupSpace b(3, 0);
  ChartPoint p{3, pe({q(2), q(3), q(1, 2)})};
  PointE z = blowdown(b, p);
  CHECK(z == pe({q(1), q(3, 2), q(1, 2)}));
}

TEST_CASE("blowup: chart sections invert blowdown off the center") {
  BlowupSpace b(4, 1);
  PointE z = pe({q(5), q(2), q(-3), q(4)});
  for (int j : b.charts()) {
    ChartPoint p = chart_section(b, j, z);
    CHECK(p.j == j);
    CHECK(blowdown(b, p) == z);
  }
  PointE on_axis = pe({q(5), q(0), q(7), q(0)});
  CHECK_THROWS_AS(chart_section(b, 2, on_axis), DomainError);
}

TEST_CASE("blowup: chart weights subtract the chart slot weight") {
  BlowupSpace b0(3, 0);
  CHECK(chart_weights(WeightVector{1, 1, 1}, b0, 3) == WeightVector{0, 0, 1});

  BlowupSpace b1(3, 1);
  WeightVector l{2, -1, 3};
  CHECK(chart_weights(l, b1, 2) == WeightVector{2, -1, 4});
  CHECK(chart_weights(l, b1, 3) == WeightVector{2, -4, 3});
  CHECK_THROWS_AS(chart_weights(l, b1, 1), DomainError);
}

TEST_CASE("blowup: transitions commute with blowdown") {
  BlowupSpace b(3, 0);
  ChartPoint p{3, pe({q(2), q(5), q(7)})};
  ChartPoint moved = chart_transition(b, p, 1);
  CHECK(moved.j == 1);
  // Target slot picks up the old chart coordinate times the dividing slot.
  CHECK(moved.w == pe({q(14), q(5, 2), q(1, 2)}));
  CHECK(blowdown(b, moved) == blowdown(b, p));

  // Exceptional points (w_j = 0) transition as long as the target slot is
  // nonzero.
  ChartPoint exc{3, pe({q(2), q(5), q(0)})};
  ChartPoint exc_moved = chart_transition(b, exc, 2);
  CHECK(exc_moved.j == 2);
  CHECK(blowdown(b, exc_moved) == blowdown(b, exc));

  CHECK(chart_transition(b, p, 3).w == p.w);
  ChartPoint zero_slot{3, pe({q(0), q(5), q(7)})};
  CHECK_THROWS_AS(chart_transition(b, zero_slot, 1), DomainError);
}

TEST_CASE("blowup: classification in the charts") {
  BlowupSpace b0(3, 0);
  WeightVector ones{1, 1, 1};
  ChartPoint fixed{3, pe({q(1), q(2), q(0)})};
  BlowupMembership mf = classify_blowup_point(ones, b0, fixed);
  CHECK(mf.is_fixed);
  REQUIRE(mf.plus_limit.has_value());
  CHECK(mf.plus_limit->j == 3);
  CHECK(mf.plus_limit->w == fixed.w);
  REQUIRE(mf.minus_limit.has_value());
  CHECK(mf.minus_limit->w == fixed.w);

  BlowupSpace b1(2, 0);
  WeightVector l{1, 2};
  ChartPoint p{1, pe({q(5), q(3)})};
  BlowupMembership m = classify_blowup_point(l, b1, p);
  REQUIRE(m.plus_limit.has_value());
  CHECK(m.plus_limit->j == 1);
  CHECK(m.plus_limit->w == pe({q(0), q(0)}));
  CHECK_FALSE(m.minus_limit.has_value());
  CHECK_FALSE(m.is_fixed);

  // With the first slot zero the minus flow escapes into chart 2.
  ChartPoint exc{1, pe({q(0), q(3)})};
  BlowupMembership me = classify_blowup_point(l, b1, exc);
  REQUIRE(me.plus_limit.has_value());
  CHECK(me.plus_limit->j == 1);
  CHECK(me.plus_limit->w == pe({q(0), q(0)}));
  REQUIRE(me.minus_limit.has_value());
  CHECK(me.minus_limit->j == 2);
  CHECK(me.minus_limit->w == pe({q(0), q(0)}));
}

TEST_CASE("blowup: fixed vanishing sets downstairs") {
  BlowupSpace b(3, 1);
  CHECK(blowdown_fixed_index_set(WeightVector{0, 1, -1}, b, 2) == std::vector<int>{1});
  CHECK(blowdown_fixed_index_set(WeightVector{0, 1, -1}, b, 3) == std::vector<int>{1});
  CHECK(blowdown_fixed_index_set(WeightVector{0, 0, 1}, b, 2) == std::vector<int>{1, 2});
  CHECK(blowdown_fixed_index_set(WeightVector{0, 0, 1}, b, 3) == std::vector<int>{1});
}

TEST_CASE("blowup: global fixed components on the exceptional locus") {
  BlowupSpace b(3, 0);
  auto comps = global_fixed_components(WeightVector{1, -1, 0}, b);
  REQUIRE(comps.size() == 3);
  auto by_weight = [&](long long w) {
    auto it = std::find_if(comps.begin(), comps.end(),
                           [&](const BlowupFixedComponent& c) { return c.weight == w; });
    REQUIRE(it != comps.end());
    return *it;
  };
  BlowupFixedComponent minus = by_weight(-1);
  CHECK(minus.proj_indices == std::vector<int>{2});
  CHECK(minus.dim == 0);
  CHECK_FALSE(minus.cone);
  BlowupFixedComponent zero = by_weight(0);
  CHECK(zero.proj_indices == std::vector<int>{3});
  CHECK(zero.cone);
  CHECK(zero.dim == 1);
  BlowupFixedComponent plus = by_weight(1);
  CHECK(plus.proj_indices == std::vector<int>{1});
  CHECK(plus.dim == 0);
}

TEST_CASE("blowup: trivial blowups report the base fixed locus") {
  BlowupSpace b(2, 1);
  auto comps = global_fixed_components(WeightVector{0, 1}, b);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].proj_indices == std::vector<int>{2});
  CHECK(comps[0].weight == 1);
  CHECK(comps[0].base_indices == std::vector<int>{1});
  CHECK(comps[0].dim == 1);
}
