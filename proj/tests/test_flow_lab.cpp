#include "doctest.h"

#include <cmath>
#include <complex>

#include "bbkit/flow_lab.hpp"

using namespace bbkit;
using cplx = std::complex<double>;

TEST_CASE("flow_lab: hamiltonian in affine and projective form") {
  WeightVector l{1, 2, -1};
  PointC z = {cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(2.0, 0.0)};
  CHECK(hamiltonian(l, z) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(hamiltonian(l, z, true) == doctest::Approx(-0.5 / 6.0).epsilon(1e-15));
  PointC zero = {cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK(hamiltonian(l, zero) == 0.0);
  CHECK_THROWS_AS(hamiltonian(l, zero, true), DomainError);
  CHECK_THROWS_AS(hamiltonian(l, PointC{cplx(1.0, 0.0)}), ShapeError);
}

TEST_CASE("flow_lab: generator, radial field, and gradient") {
  Fields f = fields(WeightVector{2}, PointC{cplx(1.0, 1.0)});
  CHECK(std::abs(f.grad[0] - cplx(2.0, 2.0)) < 1e-15);
  CHECK(std::abs(f.theta[0] - cplx(-2.0, 2.0)) < 1e-15);
  CHECK(f.radial == f.grad);
}

TEST_CASE("flow_lab: hessian spectrum doubles each weight") {
  HessianSpectrum h = hessian_spectrum(WeightVector{1, -2, 0});
  CHECK(h.eigenvalues == std::vector<double>{-2.0, -2.0, 0.0, 0.0, 1.0, 1.0});
  CHECK(h.morse_index == 2);
  CHECK(h.morse_coindex == 2);
  CHECK(h.nullity == 2);
}

TEST_CASE("flow_lab: closed-form flow and its semigroup law") {
  WeightVector l{1, -1};
  PointC z = {cplx(1.0, 0.0), cplx(0.0, 0.0)};
  PointC at = flow_closed(l, z, std::log(2.0));
  CHECK(std::abs(at[0] - cplx(0.5, 0.0)) < 1e-15);
  CHECK(at[1] == cplx(0.0, 0.0));

  PointC w = {cplx(0.3, -0.7), cplx(1.1, 0.2)};
  PointC two_hops = flow_closed(l, flow_closed(l, w, 0.4), 0.9);
  PointC one_hop = flow_closed(l, w, 1.3);
  for (std::size_t k = 0; k < w.size(); ++k)
    CHECK(std::abs(two_hops[k] - one_hop[k]) < 1e-12);
}

TEST_CASE("flow_lab: energy decays at the squared gradient norm rate") {
  WeightVector l{1, -2, 0};
  PointC z = {cplx(0.8, 0.1), cplx(-0.3, 0.5), cplx(0.2, 0.9)};
  double g2 = 0.0;
  Fields f = fields(l, z);
  for (const auto& c : f.grad) g2 += std::norm(c);
  const double h = 1e-5;
  double fd = (hamiltonian(l, flow_closed(l, z, h)) - hamiltonian(l, flow_closed(l, z, -h))) /
              (2.0 * h);
  CHECK(fd == doctest::Approx(-g2).epsilon(1e-7));
}

TEST_CASE("flow_lab: numeric flow verdicts") {
  FlowConfig cfg;  // defaults: dt 1e-3, t_max 40

  FlowTrace conv = flow_numeric(WeightVector{1, 2}, {cplx(1.0, 0.0), cplx(1.0, 0.0)}, cfg);
  CHECK(conv.verdict == FlowVerdict::Converged);
  CHECK(std::abs(conv.limit[0]) < 1e-9);
  CHECK(std::abs(conv.limit[1]) < 1e-9);
  for (std::size_t i = 1; i < conv.samples.size(); ++i)
    CHECK(conv.samples[i].f <= conv.samples[i - 1].f + 1e-12);

  FlowTrace div = flow_numeric(WeightVector{-1}, {cplx(1.0, 0.0)}, cfg);
  CHECK(div.verdict == FlowVerdict::Diverged);

  FlowConfig minus = cfg;
  minus.direction = FlowDirection::toward_minus;
  CHECK(flow_numeric(WeightVector{-1}, {cplx(1.0, 0.0)}, minus).verdict ==
        FlowVerdict::Converged);

  FlowConfig horizon;
  horizon.dt = 0.25;
  horizon.t_max = 1.0;
  horizon.tol_converge = 1e-300;
  horizon.tol_diverge = 1e300;
  FlowTrace h = flow_numeric(WeightVector{1}, {cplx(1.0, 0.0)}, horizon);
  CHECK(h.verdict == FlowVerdict::HorizonReached);
  CHECK(h.samples.size() == 5);  // the start plus four exact quarter steps
  CHECK(h.samples.back().t == doctest::Approx(1.0).epsilon(1e-15));

  // A zero gradient converges before the first step.
  FlowTrace still = flow_numeric(WeightVector{0}, {cplx(3.0, 0.0)}, cfg);
  CHECK(still.verdict == FlowVerdict::Converged);
  CHECK(still.samples.size() == 1);
}

TEST_CASE("flow_lab: numeric flow rejects bad configs and overflow") {
  WeightVector l{1};
  PointC z = {cplx(1.0, 0.0)};
  FlowConfig bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(flow_numeric(l, z, bad), DomainError);
  bad.dt = 50.0;  // dt >= t_max
  CHECK_THROWS_AS(flow_numeric(l, z, bad), DomainError);
  bad = FlowConfig{};
  bad.tol_converge = 0.0;
  CHECK_THROWS_AS(flow_numeric(l, z, bad), DomainError);

  // One step must jump from |z| = 1 past the double range to reach the
  // non-finite guard; slower growth hits the divergence verdict first.
  FlowConfig blow;
  blow.dt = 1e60;
  blow.t_max = 1e61;
  blow.tol_converge = 1e-300;
  blow.tol_diverge = 1e300;
  CHECK_THROWS_AS(flow_numeric(WeightVector{-1000000000000000000LL}, z, blow), NumericalError);
}

TEST_CASE("flow_lab: projective flow stays on the unit sphere") {
  WeightVector l{1, 0};
  PointC z = {cplx(1.0, 0.0), cplx(1.0, 0.0)};
  PointC far = flow_closed_proj(l, z, 40.0);
  CHECK(std::abs(far[0]) < 1e-15);
  CHECK(std::abs(far[1] - cplx(1.0, 0.0)) < 1e-15);

  // Normalization makes the dominant coordinate real positive.
  PointC phase = flow_closed_proj(l, {cplx(0.0, 0.0), cplx(0.0, 1.0)}, 0.0);
  CHECK(std::abs(phase[1] - cplx(1.0, 0.0)) < 1e-15);

  PointC zero = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK_THROWS_AS(flow_closed_proj(l, zero, 1.0), DomainError);
}

TEST_CASE("flow_lab: cone membership is strict in the angle") {
  ConeSpec c{{{1.0, 0.0}}, M_PI / 4.0};
  ConeAngle diag = cone_angle(c, {1.0, 1.0});
  CHECK(diag.tan_angle == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(diag.contains);
  CHECK(cone_angle(c, {1.0, 0.5}).contains);

  ConeAngle perp = cone_angle(c, {0.0, 1.0});
  CHECK(std::isinf(perp.tan_angle));
  CHECK_FALSE(perp.contains);

  ConeAngle zero = cone_angle(c, {0.0, 0.0});
  CHECK(zero.tan_angle == 0.0);
  CHECK(zero.contains);

  CHECK_THROWS_AS(cone_angle(ConeSpec{{{2.0, 0.0}}, M_PI / 4.0}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(cone_angle(ConeSpec{{{1.0, 0.0}}, 0.0}, {1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(cone_angle(ConeSpec{{{1.0, 0.0}}, 2.0}, {1.0, 0.0}), DomainError);
}

TEST_CASE("flow_lab: perturbed subspaces live strictly inside the cone") {
  ConeSpec c{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, 0.7};
  PerturbedSubspace q = perturb_subspace(c, 17);
  REQUIRE(q.basis.size() == 2);
  REQUIRE(q.basis[0].size() == 3);
  CHECK(q.sigma_min > 0.0);
  for (const auto& v : q.basis) CHECK(cone_angle(c, v).contains);

  // Orthonormality of the returned basis.
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  CHECK(dot(q.basis[0], q.basis[0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dot(q.basis[1], q.basis[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(dot(q.basis[0], q.basis[1])) < 1e-12);

  PerturbedSubspace again = perturb_subspace(c, 17);
  CHECK(again.basis == q.basis);
  CHECK(again.sigma_min == q.sigma_min);

  ConeSpec right{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, M_PI / 2.0};
  CHECK_THROWS_AS(perturb_subspace(right, 17), DomainError);
}
