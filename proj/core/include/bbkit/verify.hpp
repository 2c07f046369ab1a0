#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bbkit {

// One verification suite outcome. detail carries counts, extremal errors, or
// the first counterexample.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Reproduction checks. Exact unless stated otherwise.
CheckResult check_quadratic_cone();
CheckResult check_c2_strata_table();
CheckResult check_projective_fixed_loci();
CheckResult check_chart_equivariance(int trials, std::uint64_t seed);
CheckResult check_fixed_locus_blowdown();
CheckResult check_flow_agreement(int weight_vectors, int seeds_per, std::uint64_t seed,
                                 double limit_tol, double energy_tol, double budget_seconds);
CheckResult check_hessian_fd(int points, std::uint64_t seed, double tol);
CheckResult check_virtual_index_identity(int trials, std::uint64_t seed);
CheckResult check_krull_bound();
CheckResult check_cone_projection(int trials, std::uint64_t seed);
CheckResult check_strict_transform_identity(int trials, std::uint64_t seed);

// Property suites beyond the reproduction set.
CheckResult check_act_group_law(int trials, std::uint64_t seed);
CheckResult check_exact_limit_sampling(int trials, std::uint64_t seed);
CheckResult check_fixed_set_patterns(int max_n, std::uint64_t seed);
CheckResult check_projective_partition(int weight_vectors, int points_per, std::uint64_t seed);
CheckResult check_tangent_weights(int trials, std::uint64_t seed);
CheckResult check_transition_groupoid(int trials, std::uint64_t seed);
CheckResult check_blowup_classification_blowdown(int trials, std::uint64_t seed);
CheckResult check_weight_decompose_property(int trials, std::uint64_t seed);
CheckResult check_transform_equivariance(int trials, std::uint64_t seed);
CheckResult check_numeric_flow_accuracy(int trials, std::uint64_t seed);
CheckResult check_energy_balance();

// Every suite at its default size, trial counts scaled by trial_scale
// (minimum 1 trial). Used by the verify command.
std::vector<CheckResult> run_all_checks(std::uint64_t seed, double trial_scale = 1.0);

}  // namespace bbkit
