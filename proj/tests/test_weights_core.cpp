#include "doctest.h"

#include <complex>

#include "bbkit/weights_core.hpp"

using namespace bbkit;

namespace {
PointE pe(std::initializer_list<ExactScalar> xs) { return PointE(xs); }
}  // namespace

TEST_CASE("weights_core: exact action scales by lambda^l") {
  WeightVector l{1, -1};
  PointE z = pe({ExactScalar(1), ExactScalar(1)});
  PointE out = act(ExactScalar(2), l, z);
  CHECK(out[0] == ExactScalar(2));
  CHECK(out[1] == ExactScalar(Rational(1, 2)));

  // Group law on a nontrivial complex scalar.
  ExactScalar lam{Rational(1, 2), Rational(1, 3)};
  ExactScalar mu{Rational(-2), Rational(1)};
  WeightVector w{3, 0, -2};
  PointE p = pe({ExactScalar(Rational(1, 7)), ExactScalar(5), ExactScalar(Rational(2), Rational(-1))});
  CHECK(act(lam * mu, w, p) == act(lam, w, act(mu, w, p)));
  CHECK(act(ExactScalar(1), w, p) == p);
}

TEST_CASE("weights_core: action rejects bad input") {
  WeightVector l{1, -1};
  CHECK_THROWS_AS(act(ExactScalar(0), l, pe({ExactScalar(1), ExactScalar(1)})), DomainError);
  CHECK_THROWS_AS(act(ExactScalar(2), l, pe({ExactScalar(1)})), ShapeError);
  CHECK_THROWS_AS(act(std::complex<double>(0.0, 0.0), l, PointC{{1.0, 0.0}, {1.0, 0.0}}),
                  DomainError);
  CHECK_THROWS_AS(classify_point(l, pe({ExactScalar(1)})), ShapeError);
}

TEST_CASE("weights_core: float action matches exact powers") {
  WeightVector l{3, -2};
  PointC z = {{1.0, 0.0}, {1.0, 0.0}};
  PointC out = act(std::complex<double>(2.0, 0.0), l, z);
  CHECK(std::abs(out[0] - std::complex<double>(8.0, 0.0)) < 1e-15);
  CHECK(std::abs(out[1] - std::complex<double>(0.25, 0.0)) < 1e-15);
}

TEST_CASE("weights_core: sign decomposition partitions the index set") {
  SignDecomposition d = sign_decompose(WeightVector{1, 0, -2, 3});
  CHECK(d.J0 == std::vector<int>{2});
  CHECK(d.Jplus == std::vector<int>{1, 4});
  CHECK(d.Jminus == std::vector<int>{3});
  CHECK(d.beta0 == 1);
  CHECK(d.betaPlus == 2);
  CHECK(d.betaMinus == 1);
}

TEST_CASE("weights_core: classification by zero pattern") {
  WeightVector l{1, -1};

  StratumMembership both_nonzero = classify_point(l, pe({ExactScalar(1), ExactScalar(1)}));
  CHECK_FALSE(both_nonzero.plus_limit.has_value());
  CHECK_FALSE(both_nonzero.minus_limit.has_value());
  CHECK_FALSE(both_nonzero.is_fixed);

  StratumMembership plus_only = classify_point(l, pe({ExactScalar(1), ExactScalar(0)}));
  REQUIRE(plus_only.plus_limit.has_value());
  CHECK(*plus_only.plus_limit == pe({ExactScalar(0), ExactScalar(0)}));
  CHECK_FALSE(plus_only.minus_limit.has_value());

  StratumMembership origin = classify_point(l, pe({ExactScalar(0), ExactScalar(0)}));
  CHECK(origin.is_fixed);
  CHECK(*origin.plus_limit == *origin.minus_limit);
}

TEST_CASE("weights_core: fixed points keep every coordinate") {
  WeightVector l{0, 0};
  PointE z = pe({ExactScalar(5), ExactScalar(7)});
  StratumMembership m = classify_point(l, z);
  CHECK(m.is_fixed);
  CHECK(*m.plus_limit == z);
  CHECK(*m.minus_limit == z);
}

TEST_CASE("weights_core: float classification uses exact zero tests") {
  WeightVector l{2, -3, 0};
  PointC z = {{0.5, -0.5}, {0.0, 0.0}, {4.0, 1.0}};
  StratumMembershipC m = classify_point(l, z);
  REQUIRE(m.plus_limit.has_value());
  CHECK((*m.plus_limit)[0] == std::complex<double>(0.0, 0.0));
  CHECK((*m.plus_limit)[2] == std::complex<double>(4.0, 1.0));
  CHECK_FALSE(m.minus_limit.has_value());  // positive-weight slot is nonzero
  CHECK_FALSE(m.is_fixed);

  // A tiny but nonzero coordinate is not zero.
  PointC almost = {{1e-300, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  CHECK_FALSE(classify_point(l, almost).is_fixed);
}
