#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fraccoop/eigenpair.hpp"

namespace fraccoop {

enum class SweepParameter { d_joint, d1, d2, s_joint, domain_scale };

enum class SweepTarget {
  min_principal,      // d -> 0: min over the domain of the pointwise bottom eigenvalue
  perron_of_average,  // d -> inf, Neumann: bottom eigenvalue of the averaged matrix
  classical_laplacian,  // s -> 1: same assembly at s = (1, 1)
  limit_s0_operator,    // s -> 0: bottom eigenvalue of A + I - P0
  perron_constant,      // l -> inf: bottom eigenvalue of the constant matrix
  divergence            // Dirichlet d -> inf or l -> 0: no finite target
};

struct SweepPlan {
  Domain domain;
  int n_modes = 64;
  int resolution = 0;    // 0 = default
  MatrixField A;
  Pair2 d{1.0, 1.0};     // fixed components (overridden by the swept one)
  Pair2 s{0.5, 0.5};
  SweepParameter parameter = SweepParameter::d_joint;
  std::vector<double> values;  // sorted, at least 4
  SweepTarget target = SweepTarget::min_principal;
  // d -> 0 refinement: modes raised to this at the two smallest values.
  int small_d_modes = 256;
};

struct SweepRow {
  double param = 0.0;
  double lambda_p = 0.0;
  double target = 0.0;   // +inf for divergence targets
  double gap = 0.0;      // |lambda_p - target| (+inf for divergence)
  bool monotone_ok = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double target_value = 0.0;  // +inf for divergence
  // Dirichlet divergence: certified lower bound value at each parameter.
  std::vector<double> lower_bounds;
  // Optional eigenfunction profiles (one per row) for exploratory output.
  std::vector<GridPair> profiles;
  bool keep_profiles = false;
};

// lambda_p across diffusion values; target per plan.target.  For Dirichlet
// divergence the certified bound
//   lambda_p^D >= min(d1^s1, d2^s2) * min(mu_1^s1, mu_1^s2) - max_x |A(x)|_2
// is validated at every value.
SweepResult sweep_diffusion(const SweepPlan& plan);

// lambda_p across fractional orders on a Neumann instance, with the s -> 1
// or s -> 0 target.  The s -> 0 target is built through a d-parameterized
// path at plan.d and 10 * plan.d and both evaluations must agree.
SweepResult sweep_order(const SweepPlan& plan);

// lambda_p^D on scaled domains l * Omega for constant coupling, with the gap
// to the constant-matrix bottom eigenvalue and the certified lower bound
//   min_i(d_i^{s_i} l^{-2 s_i} mu_1^{s_i}) + lambda_bar(A)
// validated at every l.
SweepResult sweep_domain_scale(const SweepPlan& plan);

// Monotonicity + midpoint concavity of d -> lambda_p over a rectangular grid
// of (d1, d2) values, with strictness when the eigenfunction is nonconstant.
struct ShapeReport {
  bool monotone = true;
  bool concave = true;
  bool strict = true;          // strict increase where required
  bool strictness_required = false;  // nonconstancy margin exceeded threshold
  double worst_monotone_violation = 0.0;
  double worst_concavity_violation = 0.0;
  std::vector<double> d_values;
  std::vector<std::vector<double>> lambda;  // lambda[i][j] at (d1_i, d2_j)
};

ShapeReport check_shape_properties(const Domain& domain, int n_modes,
                                   const MatrixField& A, Pair2 s,
                                   const std::vector<double>& d_values);

// Dirichlet monotonicity under domain inclusion plus the Neumann comparison:
// lambda_p^D(Omega0) >= lambda_p^D(Omega) >= lambda_p^N(Omega) for nested
// intervals and constant coupling.
struct DomainMonotonicityReport {
  double lambda_dirichlet_inner = 0.0;
  double lambda_dirichlet_outer = 0.0;
  double lambda_neumann_outer = 0.0;
  bool chain_ok = false;
};

DomainMonotonicityReport check_domain_monotonicity(const MatrixField& A, Pair2 d,
                                                   Pair2 s, double inner_length,
                                                   double outer_length,
                                                   int n_modes);

std::string to_string(SweepParameter p);
std::string to_string(SweepTarget t);

}  // namespace fraccoop
