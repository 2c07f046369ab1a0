// Acceptance gate: the eleven headline checks, one line each. Exits nonzero
// when any of them fails, so ctest treats the gate as a single verdict.

#include <cstdio>

#include "bbkit/verify.hpp"

int main() {
  using bbkit::CheckResult;
  struct Criterion {
    const char* name;
    CheckResult result;
  };

  const Criterion criteria[] = {
      {"quadratic cone strict transform", bbkit::check_quadratic_cone()},
      {"C2 decomposition table", bbkit::check_c2_strata_table()},
      {"projective fixed loci", bbkit::check_projective_fixed_loci()},
      {"chart equivariance", bbkit::check_chart_equivariance(1000, 104)},
      {"blowdown of fixed loci", bbkit::check_fixed_locus_blowdown()},
      {"flow/algebra agreement",
       bbkit::check_flow_agreement(20, 100, 106, 1e-6, 1e-9, 10.0)},
      {"finite-difference hessian", bbkit::check_hessian_fd(10, 107, 1e-5)},
      {"virtual index identity", bbkit::check_virtual_index_identity(1000, 108)},
      {"krull vs expected dimension", bbkit::check_krull_bound()},
      {"cone lemma projection", bbkit::check_cone_projection(100, 110)},
      {"strict transform identity", bbkit::check_strict_transform_identity(200, 111)},
  };

  int failed = 0;
  int number = 0;
  for (const Criterion& c : criteria) {
    ++number;
    if (!c.result.pass) ++failed;
    std::printf("[%s] criterion %d: %s (%s)\n", c.result.pass ? "PASS" : "FAIL", number, c.name,
                c.result.detail.c_str());
  }
  int total = number;
  std::printf("%d/%d criteria passed\n", total - failed, total);
  return failed == 0 ? 0 : 1;
}
