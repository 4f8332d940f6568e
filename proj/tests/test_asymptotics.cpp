#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fraccoop/asymptotics.hpp"
#include "fraccoop/eigenpair.hpp"
#include "fraccoop/tolerances.hpp"

using namespace fraccoop;

namespace {
MatrixField varying() {
  MatrixField A;
  A.a11 = cosine_field(2.0, 1, 1.0);
  A.a12 = constant_field(-1.0);
  A.a21 = constant_field(-1.0);
  A.a22 = cosine_field(2.0, 1, 1.0);
  return A;
}

MatrixField constant_sym() {
  Eigen::Matrix2d m;
  m << 2.0, -1.0, -1.0, 2.0;
  return constant_matrix(m);
}

SweepPlan base_plan(BC bc) {
  SweepPlan plan;
  plan.domain = make_interval(M_PI, bc);
  plan.n_modes = 48;
  plan.A = varying();
  return plan;
}
}  // namespace

TEST_CASE("small diffusion drives lambda_p to the pointwise minimum") {
  SweepPlan plan = base_plan(BC::neumann);
  plan.parameter = SweepParameter::d_joint;
  plan.values = {1e-4, 1e-3, 1e-2, 1e-1};
  plan.target = SweepTarget::min_principal;
  plan.small_d_modes = 128;
  const SweepResult res = sweep_diffusion(plan);

  CHECK(res.target_value == doctest::Approx(0.0).epsilon(1e-10));
  REQUIRE(res.rows.size() == 4);
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i - 1].gap < res.rows[i].gap);  // shrinking toward d -> 0
  for (const SweepRow& row : res.rows) CHECK(row.monotone_ok);
  CHECK(res.rows.front().gap < 0.06);
  CHECK(res.keep_profiles);
  CHECK(res.profiles.size() == 4);
}

TEST_CASE("large diffusion drives lambda_p to the averaged matrix") {
  SweepPlan plan = base_plan(BC::neumann);
  plan.parameter = SweepParameter::d_joint;
  plan.values = {1e3, 1e4, 1e5, 1e6};
  plan.target = SweepTarget::perron_of_average;
  const SweepResult res = sweep_diffusion(plan);

  CHECK(res.target_value == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].gap < res.rows[i - 1].gap);  // shrinking toward d -> inf
  CHECK(res.rows.back().gap < 1e-3);
}

TEST_CASE("Dirichlet large diffusion diverges above a certified floor") {
  SweepPlan plan = base_plan(BC::dirichlet);
  plan.A = constant_sym();
  plan.parameter = SweepParameter::d_joint;
  plan.values = {1e3, 1e4, 1e5, 1e6};
  plan.target = SweepTarget::divergence;
  const SweepResult res = sweep_diffusion(plan);

  CHECK(std::isinf(res.target_value));
  REQUIRE(res.lower_bounds.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::isinf(res.rows[i].gap));
    CHECK(res.rows[i].lambda_p >= res.lower_bounds[i] - tol::bound_slack);
    if (i > 0) CHECK(res.rows[i].lambda_p > res.rows[i - 1].lambda_p);
  }
  CHECK(res.rows.back().lambda_p > 900.0);
}

TEST_CASE("order one recovers the classical assembly") {
  SweepPlan plan = base_plan(BC::neumann);
  plan.parameter = SweepParameter::s_joint;
  plan.values = {0.5, 0.9, 0.99, 0.999};
  plan.target = SweepTarget::classical_laplacian;
  const SweepResult res = sweep_order(plan);

  const EigenBasis basis = build_basis(plan.domain, plan.n_modes);
  const double classical =
      principal_auto(basis, plan.d, {1.0, 1.0}, plan.A).lambda_p;
  CHECK(res.target_value == doctest::Approx(classical).epsilon(1e-12));
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].gap < res.rows[i - 1].gap);
  CHECK(res.rows.back().gap < tol::s_to_one_gap);
}

TEST_CASE("order zero approaches the projected coupling operator") {
  SweepPlan plan = base_plan(BC::neumann);
  plan.parameter = SweepParameter::s_joint;
  plan.values = {0.001, 0.01, 0.1, 0.5};
  plan.target = SweepTarget::limit_s0_operator;
  const SweepResult res = sweep_order(plan);

  const EigenBasis basis = build_basis(plan.domain, plan.n_modes);
  const CooperativeOperator limit = limit_s0_assemble(basis, plan.A);
  const double bottom = principal_symmetric(basis, limit).lambda_p;
  CHECK(res.target_value == doctest::Approx(bottom).epsilon(1e-10));
  for (std::size_t i = 1; i < res.rows.size(); ++i)
    CHECK(res.rows[i].gap > res.rows[i - 1].gap);  // shrinking toward s -> 0
  CHECK(res.rows.front().gap < 1e-2);
}

TEST_CASE("scaled Dirichlet intervals follow the 1 + 1/l law") {
  SweepPlan plan = base_plan(BC::dirichlet);
  plan.A = constant_sym();
  plan.parameter = SweepParameter::domain_scale;
  plan.values = {0.1, 0.5, 1.0, 2.0, 10.0};
  plan.target = SweepTarget::perron_constant;
  const SweepResult res = sweep_domain_scale(plan);

  CHECK(res.target_value == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const double l = plan.values[i];
    CHECK(res.rows[i].lambda_p ==
          doctest::Approx(1.0 + 1.0 / l).epsilon(1e-9));
    CHECK(res.rows[i].lambda_p >= res.lower_bounds[i] - tol::bound_slack);
    CHECK(res.rows[i].monotone_ok);
  }
}

TEST_CASE("sweep plans with mismatched settings are rejected") {
  SweepPlan plan = base_plan(BC::neumann);
  plan.parameter = SweepParameter::s_joint;
  plan.values = {0.1, 0.2, 0.3, 0.4};
  plan.target = SweepTarget::classical_laplacian;
  CHECK_THROWS_AS((void)sweep_diffusion(plan), invalid_input);  // wrong param

  SweepPlan few = base_plan(BC::neumann);
  few.parameter = SweepParameter::d_joint;
  few.values = {1.0, 2.0, 3.0};
  few.target = SweepTarget::perron_of_average;
  CHECK_THROWS_AS((void)sweep_diffusion(few), invalid_input);

  SweepPlan unordered = base_plan(BC::neumann);
  unordered.parameter = SweepParameter::s_joint;
  unordered.values = {0.5, 0.4, 0.6, 0.7};
  unordered.target = SweepTarget::classical_laplacian;
  CHECK_THROWS_AS((void)sweep_order(unordered), invalid_input);

  SweepPlan wrong_bc = base_plan(BC::dirichlet);
  wrong_bc.parameter = SweepParameter::s_joint;
  wrong_bc.values = {0.1, 0.2, 0.3, 0.4};
  wrong_bc.target = SweepTarget::classical_laplacian;
  CHECK_THROWS_AS((void)sweep_order(wrong_bc), invalid_input);

  SweepPlan one_s = base_plan(BC::neumann);
  one_s.parameter = SweepParameter::s_joint;
  one_s.values = {0.5, 0.9, 0.99, 1.0};
  one_s.target = SweepTarget::classical_laplacian;
  CHECK_THROWS_AS((void)sweep_order(one_s), invalid_input);
}

TEST_CASE("shape scan flags monotone concave growth and strictness") {
  const std::vector<double> d_values{0.25, 0.5, 1.0, 2.0, 4.0};
  const ShapeReport var = check_shape_properties(
      make_interval(M_PI, BC::neumann), 32, varying(), {0.5, 0.5}, d_values);
  CHECK(var.monotone);
  CHECK(var.concave);
  CHECK(var.strictness_required);
  CHECK(var.strict);
  CHECK(var.worst_monotone_violation <= 0.0);
  CHECK(var.lambda.size() == d_values.size());

  const ShapeReport flat = check_shape_properties(
      make_interval(M_PI, BC::neumann), 32, constant_sym(), {0.5, 0.5},
      d_values);
  CHECK(flat.monotone);
  CHECK(flat.concave);
  CHECK_FALSE(flat.strictness_required);  // flat eigenvalue in d
}

TEST_CASE("domain inclusion orders the three eigenvalues") {
  const DomainMonotonicityReport rep = check_domain_monotonicity(
      constant_sym(), {1.0, 1.0}, {0.5, 0.5}, 1.0, 2.0, 48);
  CHECK(rep.lambda_dirichlet_inner ==
        doctest::Approx(M_PI + 1.0).epsilon(1e-8));
  CHECK(rep.lambda_dirichlet_outer ==
        doctest::Approx(M_PI / 2.0 + 1.0).epsilon(1e-8));
  CHECK(rep.lambda_neumann_outer == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.chain_ok);
}

TEST_CASE("enum names are stable") {
  CHECK(to_string(SweepParameter::d_joint) == "d_joint");
  CHECK(to_string(SweepParameter::domain_scale) == "domain_scale");
  CHECK(to_string(SweepTarget::min_principal) == "min_principal");
  CHECK(to_string(SweepTarget::divergence) == "divergence");
}
