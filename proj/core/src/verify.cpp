#include "bbkit/verify.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "bbkit/blowup.hpp"
#include "bbkit/flow_lab.hpp"
#include "bbkit/ideal_engine.hpp"
#include "bbkit/projective.hpp"
#include "bbkit/rng.hpp"
#include "bbkit/weights_core.hpp"

namespace bbkit {

namespace {

CheckResult pass(std::string name, std::string detail) {
  return {std::move(name), true, std::move(detail)};
}
CheckResult fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

std::string fmt_weights(const WeightVector& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.l.size(); ++i)
    s += (i ? "," : "") + std::to_string(w.l[i]);
  return s + ")";
}

double dist(const PointC& a, const PointC& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

bool same_indices(const std::vector<int>& a, const std::vector<int>& b) { return a == b; }

// Random polynomial with the given caps; never zero.
Poly random_poly(Rng& rng, int nvars, int max_terms, int max_degree) {
  Poly f(nvars);
  int terms = static_cast<int>(rng.uniform_int(1, max_terms));
  for (int t = 0; t < terms; ++t) {
    Expo e(static_cast<std::size_t>(nvars), 0);
    int deg = static_cast<int>(rng.uniform_int(0, max_degree));
    for (int d = 0; d < deg; ++d) e[static_cast<std::size_t>(rng.uniform_int(0, nvars - 1))]++;
    f.add_term(e, rng.nonzero_gaussian_rational(3, 2));
  }
  if (f.is_zero()) f.add_term(Expo(static_cast<std::size_t>(nvars), 0), ExactScalar(1));
  return f;
}

// Nonzero float coordinate with modulus in [0.3, 1.5]; keeps divergence and
// convergence detectable well inside the flow horizon.
std::complex<double> bounded_coord(Rng& rng) {
  double r = rng.uniform(0.3, 1.5);
  double a = rng.uniform(0.0, 2.0 * M_PI);
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Reproduction checks

CheckResult check_quadratic_cone() {
  const std::string name = "quadratic cone strict transform";
  BlowupSpace b(3, 0);
  ModelSpace ms = make_model_space(3, {parse_poly("z1^2+z2^2-z3^2", 3)});
  ChartTransform ct = strict_transform_chart(ms, b, 3);
  if (ct.exceptional_exponents != std::vector<int>{2})
    return fail(name, "exceptional exponent " + std::to_string(ct.exceptional_exponents[0]) +
                          ", expected 2");
  Poly expected = parse_poly("w1^2+w2^2-1", 3);
  if (ct.strict_generators[0] != expected)
    return fail(name, "strict generator " + to_string(ct.strict_generators[0], 'w'));
  if (ct.exceptional_divisor != Poly::variable(3, 3))
    return fail(name, "exceptional divisor " + to_string(ct.exceptional_divisor, 'w'));
  if (to_string(ct.strict_generators[0], 'w') != "w1^2 + w2^2 - 1")
    return fail(name, "canonical form " + to_string(ct.strict_generators[0], 'w'));
  return pass(name, "chart 3: k=2, g=" + to_string(ct.strict_generators[0], 'w') + ", E=V(w3)");
}

CheckResult check_c2_strata_table() {
  const std::string name = "C2 strata grid";
  const std::vector<Rational> grid = {-2, -1, 0, 1, 2};
  struct Case {
    WeightVector l;
    // expected membership from the zero pattern (z1zero, z2zero)
    bool (*plus)(bool, bool);
    bool (*minus)(bool, bool);
  };
  const Case cases[] = {
      {{1, 2}, [](bool, bool) { return true; }, [](bool a, bool b) { return a && b; }},
      {{-1, -2}, [](bool a, bool b) { return a && b; }, [](bool, bool) { return true; }},
      {{1, -1}, [](bool, bool b) { return b; }, [](bool a, bool) { return a; }},
  };
  int checked = 0;
  for (const Case& c : cases) {
    for (const Rational& x : grid)
      for (const Rational& y : grid) {
        PointE z = {ExactScalar(x), ExactScalar(y)};
        bool zx = z[0].is_zero(), zy = z[1].is_zero();
        StratumMembership m = classify_point(c.l, z);
        if (m.plus_limit.has_value() != c.plus(zx, zy) ||
            m.minus_limit.has_value() != c.minus(zx, zy) || m.is_fixed != (zx && zy))
          return fail(name, "weights " + fmt_weights(c.l) + " at (" + to_string(x) + "," +
                                to_string(y) + ")");
        // Existing limits zero out exactly the coordinates moved by the flow.
        if (m.plus_limit) {
          const PointE& lim = *m.plus_limit;
          for (int k = 1; k <= 2; ++k)
            if (lim[k - 1] != (c.l.at(k) > 0 ? ExactScalar(0) : z[k - 1]))
              return fail(name, "plus limit wrong for weights " + fmt_weights(c.l));
        }
        if (m.minus_limit) {
          const PointE& lim = *m.minus_limit;
          for (int k = 1; k <= 2; ++k)
            if (lim[k - 1] != (c.l.at(k) < 0 ? ExactScalar(0) : z[k - 1]))
              return fail(name, "minus limit wrong for weights " + fmt_weights(c.l));
        }
        ++checked;
      }
  }
  return pass(name, std::to_string(checked) + " grid points across 3 sign patterns");
}

CheckResult check_projective_fixed_loci() {
  const std::string name = "projective fixed loci";
  {
    auto comps = fixed_components(WeightVector{1, 3});
    if (comps.size() != 2 || comps[0].indices != std::vector<int>{1} ||
        comps[1].indices != std::vector<int>{2} || comps[0].dim != 0 || comps[1].dim != 0)
      return fail(name, "weights (1,3) on P1: expected the two points [1,0] and [0,1]");
  }
  {
    auto comps = fixed_components(WeightVector{1, 0, 0});
    if (comps.size() != 2) return fail(name, "weights (1,0,0) on P2: expected two components");
    // Ascending weight order: the line {z1 = 0} first, then the point [1,0,0].
    if (comps[0].weight != 0 || comps[0].indices != std::vector<int>{2, 3} || comps[0].dim != 1)
      return fail(name, "weights (1,0,0): line component wrong");
    if (comps[1].weight != 1 || comps[1].indices != std::vector<int>{1} || comps[1].dim != 0)
      return fail(name, "weights (1,0,0): point component wrong");
  }
  {
    auto comps = fixed_components(WeightVector{5, 5, 5, 5});
    if (comps.size() != 1 || comps[0].dim != 3)
      return fail(name, "equal weights: expected all of P3 fixed");
  }
  return pass(name, "P1 pair of points, P2 point plus line, P3 trivial action");
}

CheckResult check_chart_equivariance(int trials, std::uint64_t seed) {
  const std::string name = "chart equivariance";
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 6));
    int m = static_cast<int>(rng.uniform_int(0, n - 1));
    BlowupSpace b(n, m);
    int j = static_cast<int>(rng.uniform_int(m + 1, n));
    WeightVector l = rng.weights(n, 6);
    ExactScalar lambda = rng.nonzero_gaussian_rational(3, 3);
    ChartPoint p{j, rng.point(n, 0.3, 3, 2)};
    PointE lhs = blowdown(b, ChartPoint{j, act(lambda, chart_weights(l, b, j), p.w)});
    PointE rhs = act(lambda, l, blowdown(b, p));
    if (lhs != rhs)
      return fail(name, "trial " + std::to_string(t) + ": n=" + std::to_string(n) +
                            " m=" + std::to_string(m) + " j=" + std::to_string(j) +
                            " weights " + fmt_weights(l));
  }
  return pass(name, std::to_string(trials) + " exact trials");
}

CheckResult check_fixed_locus_blowdown() {
  const std::string name = "fixed locus blowdown";
  int cases = 0;
  for (int n = 1; n <= 4; ++n) {
    std::vector<long long> l(static_cast<std::size_t>(n), -2);
    for (;;) {
      WeightVector w{std::vector<long long>(l)};
      std::vector<int> J0 = sign_decompose(w).J0;
      for (int m = 0; m < n; ++m) {
        BlowupSpace b(n, m);
        std::set<int> uni;
        for (int j : b.charts()) {
          auto part = blowdown_fixed_index_set(w, b, j);
          uni.insert(part.begin(), part.end());
        }
        std::vector<int> got(uni.begin(), uni.end());
        if (!same_indices(got, J0))
          return fail(name, "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                                " weights " + fmt_weights(w));
        ++cases;
      }
      // Next weight tuple in {-2..2}^n.
      int k = 0;
      while (k < n && l[static_cast<std::size_t>(k)] == 2) l[static_cast<std::size_t>(k++)] = -2;
      if (k == n) break;
      ++l[static_cast<std::size_t>(k)];
    }
  }
  return pass(name, std::to_string(cases) + " exhaustive (weights, center) cases");
}

CheckResult check_flow_agreement(int weight_vectors, int seeds_per, std::uint64_t seed,
                                 double limit_tol, double energy_tol, double budget_seconds) {
  const std::string name = "flow against classification";
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  FlowConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_max = 40.0;
  double worst = 0.0;
  for (int wv = 0; wv < weight_vectors; ++wv) {
    int n = static_cast<int>(rng.uniform_int(1, 6));
    WeightVector l = rng.weights(n, 3);
    for (int s = 0; s < seeds_per; ++s) {
      PointC z0(static_cast<std::size_t>(n));
      for (auto& c : z0) c = rng.coin(0.35) ? std::complex<double>(0.0, 0.0) : bounded_coord(rng);
      StratumMembershipC algebra = classify_point(l, z0);
      FlowTrace trace = flow_numeric(l, z0, cfg);
      for (std::size_t i = 1; i < trace.samples.size(); ++i)
        if (trace.samples[i].f > trace.samples[i - 1].f + energy_tol)
          return fail(name, "energy increased along a toward-plus flow, weights " +
                                fmt_weights(l));
      if (algebra.plus_limit) {
        if (trace.verdict != FlowVerdict::Converged)
          return fail(name, "expected convergence, weights " + fmt_weights(l));
        double d = dist(trace.limit, *algebra.plus_limit);
        worst = std::max(worst, d);
        if (d > limit_tol)
          return fail(name, "limit off by " + std::to_string(d) + ", weights " + fmt_weights(l));
      } else if (trace.verdict != FlowVerdict::Diverged) {
        return fail(name, "expected divergence, weights " + fmt_weights(l));
      }
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= budget_seconds)
    return fail(name, "took " + std::to_string(secs) + " s, budget " +
                          std::to_string(budget_seconds) + " s");
  std::ostringstream os;
  os << weight_vectors * seeds_per << " flows, worst limit error " << worst << ", " << secs
     << " s";
  return pass(name, os.str());
}

CheckResult check_hessian_fd(int points, std::uint64_t seed, double tol) {
  const std::string name = "hessian finite differences";
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < points; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 5));
    WeightVector l = rng.weights(n, 3);
    std::vector<double> x(2 * static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    auto value = [&](const std::vector<double>& coords) {
      PointC z(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k)
        z[static_cast<std::size_t>(k)] = {coords[2 * static_cast<std::size_t>(k)],
                                          coords[2 * static_cast<std::size_t>(k) + 1]};
      return hamiltonian(l, z);
    };
    const double h = 1e-3;
    const int d = 2 * n;
    Eigen::MatrixXd H(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j <= i; ++j) {
        std::vector<double> pp = x, pm = x, mp = x, mm = x;
        pp[i] += h; pp[j] += h;
        pm[i] += h; pm[j] -= h;
        mp[i] -= h; mp[j] += h;
        mm[i] -= h; mm[j] -= h;
        double v = (value(pp) - value(pm) - value(mp) + value(mm)) / (4.0 * h * h);
        H(i, j) = v;
        H(j, i) = v;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    HessianSpectrum spec = hessian_spectrum(l);
    for (int i = 0; i < d; ++i) {
      double err = std::abs(es.eigenvalues()(i) - spec.eigenvalues[static_cast<std::size_t>(i)]);
      worst = std::max(worst, err);
      if (err > tol)
        return fail(name, "eigenvalue error " + std::to_string(err) + " for weights " +
                              fmt_weights(l));
    }
  }
  std::ostringstream os;
  os << points << " random points, worst eigenvalue error " << worst;
  return pass(name, os.str());
}

CheckResult check_virtual_index_identity(int trials, std::uint64_t seed) {
  const std::string name = "virtual index identity";
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(0, 8));
    int r = static_cast<int>(rng.uniform_int(0, 5));
    WeightVector tangent = rng.weights(n, 5);
    WeightVector obstruction = rng.weights(r, 5);
    VirtualIndices vi = virtual_indices(tangent, obstruction);
    if (vi.expdim0 + vi.expdimPlus + vi.expdimMinus != n - r)
      return fail(name, "sum identity broke at trial " + std::to_string(t));
    if (vi.mbNullity != 2 * vi.expdim0 || vi.mbCoindex != 2 * vi.expdimPlus ||
        vi.mbIndex != 2 * vi.expdimMinus)
      return fail(name, "doubling broke at trial " + std::to_string(t));
    if (r == 0) {
      SignDecomposition sd = sign_decompose(tangent);
      if (vi.expdim0 != sd.beta0 || vi.expdimPlus != sd.betaPlus || vi.expdimMinus != sd.betaMinus)
        return fail(name, "r=0 case disagrees with the sign decomposition");
    }
  }
  // Reference model: generators x1^2+x1*x2 and x2*x3^3 with weights (-1,-1,1)
  // induce obstruction weights (-2, 2).
  ModelSpace ms = make_model_space(
      3, {parse_poly("z1^2+z1*z2", 3), parse_poly("z2*z3^3", 3)}, WeightVector{-1, -1, 1});
  WeightVector obs = validate_equivariance(ms).obstruction;
  if (obs != WeightVector{-2, 2})
    return fail(name, "induced obstruction weights " + fmt_weights(obs) + ", expected (-2,2)");
  VirtualIndices example = virtual_indices(WeightVector{1, -1, 0}, WeightVector{1});
  if (example.expdim0 != 1 || example.expdimPlus != 0 || example.expdimMinus != 1)
    return fail(name, "counting example (1,-1,0)/(1) wrong");
  return pass(name, std::to_string(trials) + " random pairs; induced weights (-2,2)");
}

CheckResult check_krull_bound() {
  const std::string name = "krull lower bound";
  long long cases = 0;
  for (int n = 1; n <= 5; ++n) {
    // Monomials of degree 1..3 in n variables.
    std::vector<Expo> monos;
    Expo e(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
      if (var == n) {
        if (total_degree(e) >= 1) monos.push_back(e);
        return;
      }
      for (int d = 0; d <= remaining; ++d) {
        e[static_cast<std::size_t>(var)] = d;
        self(self, var + 1, remaining - d);
      }
      e[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, 3);
    auto poly_of = [&](const Expo& ex) { return Poly::monomial(n, ex, ExactScalar(1)); };
    const std::size_t M = monos.size();
    for (std::size_t i = 0; i < M; ++i) {
      if (krull_dim_monomial({poly_of(monos[i])}, n) < n - 1)
        return fail(name, "single generator case broke, n=" + std::to_string(n));
      ++cases;
      for (std::size_t j = i + 1; j < M; ++j) {
        if (krull_dim_monomial({poly_of(monos[i]), poly_of(monos[j])}, n) < n - 2)
          return fail(name, "two generator case broke, n=" + std::to_string(n));
        ++cases;
        for (std::size_t k = j + 1; k < M; ++k) {
          if (krull_dim_monomial({poly_of(monos[i]), poly_of(monos[j]), poly_of(monos[k])}, n) <
              n - 3)
            return fail(name, "three generator case broke, n=" + std::to_string(n));
          ++cases;
        }
      }
    }
  }
  // uv in two variables: the union of the axes is one-dimensional.
  Poly uv = Poly::monomial(2, {1, 1}, ExactScalar(1));
  if (krull_dim_monomial({uv}, 2) != 1) return fail(name, "dim V(uv) != 1");
  return pass(name, std::to_string(cases) + " monomial ideals; dim V(uv) = 1");
}

CheckResult check_cone_projection(int trials, std::uint64_t seed) {
  const std::string name = "cone projection rank";
  Rng rng(seed);
  double worst_sigma = 1.0;
  for (int t = 0; t < trials; ++t) {
    int d = static_cast<int>(rng.uniform_int(2, 8));
    int p = static_cast<int>(rng.uniform_int(1, d - 1));
    // Random orthonormal axis from the QR of a Gaussian matrix.
    Eigen::MatrixXd G(d, p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < p; ++j) G(i, j) = rng.normal();
    Eigen::MatrixXd Q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ() * Eigen::MatrixXd::Identity(d, p);
    ConeSpec cone;
    cone.theta = M_PI / 4.0;
    cone.axis.assign(static_cast<std::size_t>(p), std::vector<double>(static_cast<std::size_t>(d)));
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < d; ++i)
        cone.axis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = Q(i, j);

    PerturbedSubspace sub = perturb_subspace(cone, rng.next_u64());
    if (!(sub.sigma_min > 0.0))
      return fail(name, "projection lost rank at trial " + std::to_string(t));
    worst_sigma = std::min(worst_sigma, sub.sigma_min);

    // Random unit vectors of Q stay inside the cone.
    for (int probe = 0; probe < 20; ++probe) {
      std::vector<double> v(static_cast<std::size_t>(d), 0.0);
      for (int j = 0; j < p; ++j) {
        double c = rng.normal();
        for (int i = 0; i < d; ++i)
          v[static_cast<std::size_t>(i)] +=
              c * sub.basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
      ConeAngle ca = cone_angle(cone, v);
      if (!ca.contains)
        return fail(name, "subspace vector left the cone at trial " + std::to_string(t));
    }
  }
  std::ostringstream os;
  os << trials << " subspaces, smallest singular value " << worst_sigma;
  return pass(name, os.str());
}

CheckResult check_strict_transform_identity(int trials, std::uint64_t seed) {
  const std::string name = "strict transform identity";
  Rng rng(seed);
  int charts_checked = 0;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 5));
    int m = static_cast<int>(rng.uniform_int(0, n - 1));
    BlowupSpace b(n, m);
    int gens = static_cast<int>(rng.uniform_int(1, 3));
    std::vector<Poly> ideal;
    for (int g = 0; g < gens; ++g) ideal.push_back(random_poly(rng, n, 5, 4));
    ModelSpace ms = make_model_space(n, ideal);
    for (int j : b.charts()) {
      ChartTransform ct = strict_transform_chart(ms, b, j);
      for (std::size_t g = 0; g < ms.generators.size(); ++g) {
        Poly total = pullback_chart(ms.generators[g], b, j);
        Expo wj(static_cast<std::size_t>(n), 0);
        wj[static_cast<std::size_t>(j - 1)] = ct.exceptional_exponents[g];
        Poly recomposed = Poly::monomial(n, wj, ExactScalar(1)) * ct.strict_generators[g];
        if (recomposed != total)
          return fail(name, "pullback != w^k * g at trial " + std::to_string(t));
        int min_e = -1;
        for (const auto& term : ct.strict_generators[g].terms()) {
          int ej = term.first[static_cast<std::size_t>(j - 1)];
          min_e = min_e < 0 ? ej : std::min(min_e, ej);
        }
        if (min_e != 0)
          return fail(name, "strict generator divisible by the exceptional variable, trial " +
                                std::to_string(t));
      }
      ++charts_checked;
    }
  }
  return pass(name, std::to_string(trials) + " ideals, " + std::to_string(charts_checked) +
                        " charts, exact identities");
}

// ---------------------------------------------------------------------------
// Property suites

CheckResult check_act_group_law(int trials, std::uint64_t seed) {
  const std::string name = "action group law";
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 6));
    WeightVector l = rng.weights(n, 6);
    ExactScalar a = rng.nonzero_gaussian_rational(3, 3);
    ExactScalar b = rng.nonzero_gaussian_rational(3, 3);
    PointE z = rng.point(n, 0.2, 3, 2);
    if (act(a * b, l, z) != act(a, l, act(b, l, z)))
      return fail(name, "act(ab) != act(a)act(b) at trial " + std::to_string(t));
    if (act(ExactScalar(1), l, z) != z)
      return fail(name, "act(1) is not the identity at trial " + std::to_string(t));
  }
  return pass(name, std::to_string(trials) + " exact trials");
}

CheckResult check_exact_limit_sampling(int trials, std::uint64_t seed) {
  const std::string name = "limit sampling";
  Rng rng(seed);
  const int S = 40;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 5));
    WeightVector l = rng.weights(n, 4);
    // Force membership in the plus stratum: zero out negative-weight slots.
    PointE z = rng.point(n, 0.25, 3, 2);
    for (int k = 1; k <= n; ++k)
      if (l.at(k) < 0) z[k - 1] = ExactScalar(0);
    StratumMembership m = classify_point(l, z);
    if (!m.plus_limit) return fail(name, "constructed point left the plus stratum");
    const PointE& lim = *m.plus_limit;
    ExactScalar lambda(Rational(1, 2));
    PointE prev = z;
    for (int s = 1; s <= S; ++s) {
      PointE cur = act(pow(lambda, s), l, z);
      for (int k = 1; k <= n; ++k) {
        Rational dc = (cur[k - 1] - lim[k - 1]).abs2();
        Rational dp = (prev[k - 1] - lim[k - 1]).abs2();
        if (!(dc < dp || dp == 0))
          return fail(name, "coordinate " + std::to_string(k) +
                                " fails monotone convergence at trial " + std::to_string(t));
      }
      prev = cur;
    }
    // After S halvings every moving coordinate has shrunk by 4^S at least.
    const Rational four_pow_s(boost::multiprecision::pow(BigInt(4), S));
    for (int k = 1; k <= n; ++k) {
      if (l.at(k) <= 0) continue;
      Rational start = (z[k - 1] - lim[k - 1]).abs2();
      Rational end = (prev[k - 1] - lim[k - 1]).abs2();
      if (end * four_pow_s > start)
        return fail(name, "coordinate " + std::to_string(k) + " converges too slowly");
    }
  }
  return pass(name, std::to_string(trials) + " exact dyadic samplings");
}

CheckResult check_fixed_set_patterns(int max_n, std::uint64_t seed) {
  const std::string name = "fixed point patterns";
  Rng rng(seed);
  long long cases = 0;
  for (int n = 1; n <= max_n; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      WeightVector l = rng.weights(n, 3);
      SignDecomposition sd = sign_decompose(l);
      if (sd.beta0 + sd.betaPlus + sd.betaMinus != n)
        return fail(name, "beta counts do not sum to n");
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        PointE z(static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k)
          z[k - 1] = (mask >> (k - 1)) & 1u ? ExactScalar(1) : ExactScalar(0);
        bool in_J0 = true;
        for (int k = 1; k <= n; ++k)
          if (((mask >> (k - 1)) & 1u) && l.at(k) != 0) in_J0 = false;
        StratumMembership m = classify_point(l, z);
        if (m.is_fixed != in_J0)
          return fail(name, "pattern " + std::to_string(mask) + " for weights " + fmt_weights(l));
        if (m.is_fixed && (!m.plus_limit || !m.minus_limit || *m.plus_limit != z ||
                           *m.minus_limit != z))
          return fail(name, "fixed point limits are not the point itself");
        ++cases;
      }
    }
  }
  return pass(name, std::to_string(cases) + " 0/1 patterns");
}

CheckResult check_projective_partition(int weight_vectors, int points_per, std::uint64_t seed) {
  const std::string name = "projective strata partition";
  Rng rng(seed);
  for (int wv = 0; wv < weight_vectors; ++wv) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    WeightVector l = rng.weights(n, 4);
    auto comps = fixed_components(l);
    for (int s = 0; s < points_per; ++s) {
      PointE raw = rng.point(n, 0.4, 3, 2);
      bool all_zero = true;
      for (const auto& c : raw) all_zero &= c.is_zero();
      if (all_zero) raw[static_cast<std::size_t>(rng.uniform_int(0, n - 1))] = ExactScalar(1);
      ProjPoint p = make_proj_point(raw);
      ProjMembership m = classify_proj(l, p);

      // The construction's stratum index: the first component, in ascending
      // weight order, with a nonzero coordinate.
      auto first_present = [&](bool ascending) -> const FixedComponent* {
        if (ascending) {
          for (const auto& c : comps)
            for (int k : c.indices)
              if (!p.homog[static_cast<std::size_t>(k - 1)].is_zero()) return &c;
        } else {
          for (auto it = comps.rbegin(); it != comps.rend(); ++it)
            for (int k : it->indices)
              if (!p.homog[static_cast<std::size_t>(k - 1)].is_zero()) return &*it;
        }
        return nullptr;
      };
      const FixedComponent* plus = first_present(true);
      const FixedComponent* minus = first_present(false);
      if (!plus || !(*plus == m.plus_component) || !minus || !(*minus == m.minus_component))
        return fail(name, "stratum construction disagrees with classify, weights " +
                              fmt_weights(l));
      // Limits land in their components.
      for (int k = 1; k <= n; ++k) {
        if (!m.plus_limit.homog[k - 1].is_zero() &&
            !std::binary_search(m.plus_component.indices.begin(),
                                m.plus_component.indices.end(), k))
          return fail(name, "plus limit leaves its component");
        if (!m.minus_limit.homog[k - 1].is_zero() &&
            !std::binary_search(m.minus_component.indices.begin(),
                                m.minus_component.indices.end(), k))
          return fail(name, "minus limit leaves its component");
      }
      // Equivariance: acting does not change the assignment.
      ExactScalar lambda = rng.nonzero_gaussian_rational(3, 2);
      ProjPoint q = make_proj_point(act(lambda, l, p.homog));
      ProjMembership mq = classify_proj(l, q);
      if (!(mq.plus_component == m.plus_component) || !(mq.minus_component == m.minus_component))
        return fail(name, "classification is not equivariant, weights " + fmt_weights(l));
    }
  }
  return pass(name, std::to_string(weight_vectors) + " weight vectors x " +
                        std::to_string(points_per) + " points");
}

CheckResult check_tangent_weights(int trials, std::uint64_t seed) {
  const std::string name = "projective tangent weights";
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    WeightVector l = rng.weights(n, 4);
    for (const FixedComponent& c : fixed_components(l)) {
      for (int j : c.indices) {
        WeightVector tw = tangent_weights_at_fixed(l, c, j);
        SignDecomposition sd = sign_decompose(tw);
        if (sd.beta0 + sd.betaPlus + sd.betaMinus != n - 1)
          return fail(name, "tangent weight count wrong");
        if (sd.beta0 != c.dim)
          return fail(name, "nullity differs from the component dimension");
        // Sign oracle: a nearby point along slot k flows back to [e_j] in the
        // plus direction exactly when l_k - kappa > 0.
        PointE base(static_cast<std::size_t>(n), ExactScalar(0));
        base[static_cast<std::size_t>(j - 1)] = ExactScalar(1);
        ProjPoint pj = make_proj_point(base);
        for (int k = 1; k <= n; ++k) {
          if (k == j || l.at(k) == c.weight) continue;
          PointE nearby = base;
          nearby[static_cast<std::size_t>(k - 1)] = ExactScalar(Rational(1, 7));
          ProjMembership m = classify_proj(l, make_proj_point(nearby));
          bool attracted_plus = m.plus_limit == pj;
          if (attracted_plus != (l.at(k) > c.weight))
            return fail(name, "sign oracle failed at slot " + std::to_string(k));
        }
      }
    }
  }
  // The reference cases: weights (1,3) at [1,0] and (1,0,0) at [1,0,0].
  {
    auto comps = fixed_components(WeightVector{1, 3});
    WeightVector tw = tangent_weights_at_fixed(WeightVector{1, 3}, comps[0], 1);
    if (tw != WeightVector{2}) return fail(name, "weights (1,3) at [1,0]: expected {2}");
  }
  {
    auto comps = fixed_components(WeightVector{1, 0, 0});
    WeightVector tw = tangent_weights_at_fixed(WeightVector{1, 0, 0}, comps[1], 1);
    if (tw != WeightVector{-1, -1})
      return fail(name, "weights (1,0,0) at [1,0,0]: expected {-1,-1}");
    // That point maximizes the projective Hamiltonian.
    Rng rng2(seed ^ 0x5bf0u);
    PointC top = {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
    double ftop = hamiltonian(WeightVector{1, 0, 0}, top, true);
    if (std::abs(ftop - 0.5) > 1e-15) return fail(name, "h([1,0,0]) != 1/2");
    for (int s = 0; s < 200; ++s) {
      PointC z = rng2.pointc(3, 0.3, 2.0);
      bool nz = false;
      for (auto& c : z) nz |= c != std::complex<double>(0.0, 0.0);
      if (!nz) continue;
      if (hamiltonian(WeightVector{1, 0, 0}, z, true) > ftop + 1e-12)
        return fail(name, "projective Hamiltonian exceeded its maximum");
    }
  }
  return pass(name, std::to_string(trials) + " random weight vectors plus reference cases");
}

CheckResult check_transition_groupoid(int trials, std::uint64_t seed) {
  const std::string name = "chart transition groupoid";
  Rng rng(seed);
  int composed = 0;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(2, 6));
    int m = static_cast<int>(rng.uniform_int(0, n - 2));  // at least two charts
    BlowupSpace b(n, m);
    int j = static_cast<int>(rng.uniform_int(m + 1, n));
    ChartPoint p{j, rng.point(n, 0.3, 3, 2)};
    if (!(chart_transition(b, p, j).w == p.w))
      return fail(name, "transition to the same chart moved the point");
    int j2 = static_cast<int>(rng.uniform_int(m + 1, n));
    int j3 = static_cast<int>(rng.uniform_int(m + 1, n));
    auto hom = [&](const ChartPoint& q, int k) {
      return k == q.j ? ExactScalar(1) : q.w[static_cast<std::size_t>(k - 1)];
    };
    if (hom(p, j2).is_zero()) continue;
    ChartPoint q = chart_transition(b, p, j2);
    if (blowdown(b, q) != blowdown(b, p))
      return fail(name, "transition changed the blowdown at trial " + std::to_string(t));
    if (hom(q, j3).is_zero() || hom(p, j3).is_zero()) continue;
    ChartPoint r1 = chart_transition(b, q, j3);
    ChartPoint r2 = chart_transition(b, p, j3);
    if (!(r1.j == r2.j && r1.w == r2.w))
      return fail(name, "composition disagrees at trial " + std::to_string(t));
    ++composed;
    // Off the divisor the transition matches section-after-blowdown.
    if (!p.w[static_cast<std::size_t>(p.j - 1)].is_zero()) {
      ChartPoint via = chart_section(b, j2, blowdown(b, p));
      if (!(via.j == q.j && via.w == q.w))
        return fail(name, "transition differs from the section route");
    }
  }
  return pass(name, std::to_string(trials) + " trials, " + std::to_string(composed) +
                        " compositions");
}

CheckResult check_blowup_classification_blowdown(int trials, std::uint64_t seed) {
  const std::string name = "blowup classification blowdown";
  Rng rng(seed);
  int with_limits = 0;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 6));
    int m = static_cast<int>(rng.uniform_int(0, n - 1));
    BlowupSpace b(n, m);
    WeightVector l = rng.weights(n, 4);
    int j = static_cast<int>(rng.uniform_int(m + 1, n));
    ChartPoint p{j, rng.point(n, 0.35, 3, 2)};
    BlowupMembership up = classify_blowup_point(l, b, p);
    StratumMembership down = classify_point(l, blowdown(b, p));
    if (up.plus_limit.has_value() != down.plus_limit.has_value() ||
        up.minus_limit.has_value() != down.minus_limit.has_value())
      return fail(name, "existence mismatch at trial " + std::to_string(t) + ", weights " +
                            fmt_weights(l));
    if (up.plus_limit && blowdown(b, *up.plus_limit) != *down.plus_limit)
      return fail(name, "plus limits do not commute with the blowdown, trial " +
                            std::to_string(t));
    if (up.minus_limit && blowdown(b, *up.minus_limit) != *down.minus_limit)
      return fail(name, "minus limits do not commute with the blowdown, trial " +
                            std::to_string(t));
    if (up.plus_limit || up.minus_limit) ++with_limits;
    if (up.is_fixed && (!up.plus_limit || !(up.plus_limit->w == p.w)))
      return fail(name, "fixed point limit is not the point itself");
  }
  return pass(name, std::to_string(trials) + " trials, " + std::to_string(with_limits) +
                        " with limits");
}

CheckResult check_weight_decompose_property(int trials, std::uint64_t seed) {
  const std::string name = "weight decomposition";
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 5));
    WeightVector l = rng.weights(n, 4);
    Poly f = random_poly(rng, n, 6, 4);
    auto parts = weight_decompose(f, l);
    Poly sum(n);
    long long prev = 0;
    bool first = true;
    for (const auto& [w, comp] : parts) {
      if (!first && w <= prev) return fail(name, "weights not strictly increasing");
      prev = w;
      first = false;
      if (weight_of(comp, l) != std::optional<long long>(w))
        return fail(name, "component is not semi-invariant of its weight");
      sum += comp;
    }
    if (sum != f) return fail(name, "components do not sum to the input");
    if (parts.size() == 1 && weight_of(f, l) != std::optional<long long>(parts[0].first))
      return fail(name, "semi-invariant input not recognized");
  }
  // x1 + x2^2 with weights (1,1) splits into x1 and x2^2.
  auto parts = weight_decompose(parse_poly("z1+z2^2", 2), WeightVector{1, 1});
  if (parts.size() != 2 || parts[0].first != 1 || parts[1].first != 2)
    return fail(name, "reference split wrong");
  if (weight_of(parse_poly("z1+z2^2", 2), WeightVector{1, 1}).has_value())
    return fail(name, "non-semi-invariant input reported a weight");
  return pass(name, std::to_string(trials) + " random polynomials");
}

CheckResult check_transform_equivariance(int trials, std::uint64_t seed) {
  const std::string name = "transform equivariance";
  Rng rng(seed);
  int checked = 0;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(2, 5));
    int m = static_cast<int>(rng.uniform_int(0, n - 1));
    BlowupSpace b(n, m);
    WeightVector l = rng.weights(n, 3);
    // A semi-invariant generator: one weight component of a random polynomial.
    Poly f = random_poly(rng, n, 6, 4);
    auto parts = weight_decompose(f, l);
    const auto& [mw, gen] =
        parts[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(parts.size()) - 1))];
    ModelSpace ms = make_model_space(n, {gen}, l);
    for (int j : b.charts()) {
      ChartTransform ct = strict_transform_chart(ms, b, j);
      auto got = weight_of(ct.strict_generators[0], chart_weights(l, b, j));
      long long expected = mw - static_cast<long long>(ct.exceptional_exponents[0]) * l.at(j);
      if (got != std::optional<long long>(expected))
        return fail(name, "chart weight of the strict generator wrong at trial " +
                              std::to_string(t));
      ++checked;
    }
  }
  return pass(name, std::to_string(checked) + " chart transforms");
}

CheckResult check_numeric_flow_accuracy(int trials, std::uint64_t seed) {
  const std::string name = "numeric flow accuracy";
  Rng rng(seed);
  FlowConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 5.0;
  cfg.tol_converge = 1e-300;  // compare full trajectories, no early exit
  cfg.tol_diverge = 1e30;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    int n = static_cast<int>(rng.uniform_int(1, 6));
    WeightVector l = rng.weights(n, 3);
    PointC z0 = rng.pointc(n, 0.2, 1.0);
    FlowTrace trace = flow_numeric(l, z0, cfg);
    for (std::size_t s = 0; s < trace.samples.size(); s += 250) {
      PointC exact = flow_closed(l, z0, trace.samples[s].t);
      for (std::size_t k = 0; k < exact.size(); ++k) {
        // Relative comparison for growing coordinates, absolute for bounded.
        double scale = std::max(1.0, std::abs(exact[k]));
        double err = std::abs(trace.samples[s].z[k] - exact[k]) / scale;
        worst = std::max(worst, err);
        if (err > 1e-8)
          return fail(name, "error " + std::to_string(err) + " at t = " +
                                std::to_string(trace.samples[s].t));
      }
    }
    // Semigroup property of the closed form.
    double a = rng.uniform(0.0, 2.0), c = rng.uniform(0.0, 2.0);
    PointC two_step = flow_closed(l, flow_closed(l, z0, a), c);
    PointC one_step = flow_closed(l, z0, a + c);
    double mag = 0.0;
    for (const auto& zc : one_step) mag += std::norm(zc);
    if (dist(two_step, one_step) > 1e-12 * (1.0 + std::sqrt(mag)))
      return fail(name, "closed-form semigroup property failed");
  }
  std::ostringstream os;
  os << trials << " trajectories, worst scaled error " << worst;
  return pass(name, os.str());
}

CheckResult check_energy_balance() {
  const std::string name = "energy balance";
  // Negative-gradient flow loses energy at rate |grad f|^2; the trapezoid
  // discretization of that law converges at second order.
  WeightVector l{1, 2, -1};
  PointC z0 = {{0.7, -0.3}, {0.2, 0.4}, {0.1, 0.05}};
  auto defect = [&](double dt) {
    FlowConfig cfg;
    cfg.dt = dt;
    cfg.t_max = 2.0;
    cfg.tol_converge = 1e-300;
    cfg.tol_diverge = 1e30;
    FlowTrace tr = flow_numeric(l, z0, cfg);
    double acc = 0.0;
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
      auto g2 = [&](const PointC& z) {
        double s = 0.0;
        for (int k = 1; k <= l.n(); ++k)
          s += static_cast<double>(l.at(k) * l.at(k)) * std::norm(z[k - 1]);
        return s;
      };
      double h = tr.samples[i].t - tr.samples[i - 1].t;
      acc += 0.5 * (g2(tr.samples[i - 1].z) + g2(tr.samples[i].z)) * h;
    }
    double df = tr.samples.back().f - tr.samples.front().f;
    return std::abs(df + acc);
  };
  double e1 = defect(1e-2);
  double e2 = defect(5e-3);
  if (e1 > 1e-4) return fail(name, "defect " + std::to_string(e1) + " at dt = 1e-2");
  if (e2 > e1 / 3.0)
    return fail(name, "defect did not shrink quadratically: " + std::to_string(e1) + " -> " +
                          std::to_string(e2));
  std::ostringstream os;
  os << "defect " << e1 << " at dt=1e-2, " << e2 << " at dt=5e-3";
  return pass(name, os.str());
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed, double trial_scale) {
  auto scaled = [&](int trials) {
    auto v = static_cast<long long>(trials * trial_scale);
    return static_cast<int>(std::max(1ll, v));
  };
  auto sub = [&](std::uint64_t salt) { return seed ^ (salt * 0x9e3779b97f4a7c15ull); };
  std::vector<CheckResult> out;
  out.push_back(check_quadratic_cone());
  out.push_back(check_c2_strata_table());
  out.push_back(check_projective_fixed_loci());
  out.push_back(check_chart_equivariance(scaled(1000), sub(4)));
  out.push_back(check_fixed_locus_blowdown());
  out.push_back(check_flow_agreement(scaled(20), 100, sub(6), 1e-6, 1e-9, 10.0));
  out.push_back(check_hessian_fd(scaled(10), sub(7), 1e-5));
  out.push_back(check_virtual_index_identity(scaled(1000), sub(8)));
  out.push_back(check_krull_bound());
  out.push_back(check_cone_projection(scaled(100), sub(10)));
  out.push_back(check_strict_transform_identity(scaled(200), sub(11)));
  out.push_back(check_act_group_law(scaled(500), sub(12)));
  out.push_back(check_exact_limit_sampling(scaled(50), sub(13)));
  out.push_back(check_fixed_set_patterns(6, sub(14)));
  out.push_back(check_projective_partition(scaled(20), 50, sub(15)));
  out.push_back(check_tangent_weights(scaled(50), sub(16)));
  out.push_back(check_transition_groupoid(scaled(300), sub(17)));
  out.push_back(check_blowup_classification_blowdown(scaled(500), sub(18)));
  out.push_back(check_weight_decompose_property(scaled(200), sub(19)));
  out.push_back(check_transform_equivariance(scaled(100), sub(20)));
  out.push_back(check_numeric_flow_accuracy(scaled(10), sub(21)));
  out.push_back(check_energy_balance());
  return out;
}

}  // namespace bbkit
