#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fraccoop/eigenpair.hpp"
#include "fraccoop/reference.hpp"
#include "fraccoop/tolerances.hpp"

using namespace fraccoop;

namespace {
const Domain kNeu = make_interval(M_PI, BC::neumann);

Eigen::Matrix2d matrix2(double a, double b, double c, double d) {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

MatrixField varying() {
  MatrixField A;
  A.a11 = cosine_field(2.0, 1, 1.0);
  A.a12 = constant_field(-1.0);
  A.a21 = constant_field(-1.0);
  A.a22 = cosine_field(2.0, 1, 1.0);
  return A;
}
}  // namespace

TEST_CASE("constant couplings match the per-mode oracle") {
  struct Case {
    Domain domain;
    Pair2 d, s;
    Eigen::Matrix2d C;
  };
  const Case cases[] = {
      {kNeu, {1.0, 1.0}, {0.5, 0.5}, matrix2(2, -1, -1, 2)},
      {make_interval(M_PI, BC::dirichlet),
       {1.0, 1.0},
       {0.5, 0.5},
       matrix2(2, -1, -1, 2)},
      {make_interval(2.0, BC::neumann),
       {0.3, 2.0},
       {0.25, 0.8},
       matrix2(1.5, -0.5, -0.5, 2.5)},
      {make_interval(1.0, BC::dirichlet),
       {2.0, 0.5},
       {0.9, 0.6},
       matrix2(3.0, -1.0, -2.0, 1.0)},
  };
  for (const Case& c : cases) {
    const EigenBasis basis = build_basis(c.domain, 48);
    const PrincipalEigenpair eig =
        principal_auto(basis, c.d, c.s, constant_matrix(c.C));
    const double oracle = ref::constant_lambda_p(c.domain, 48, c.d, c.s, c.C);
    CHECK(eig.lambda_p == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(eig.residual < tol::residual_max);
    CHECK(eig.positivity_margin > 0.0);
  }
}

TEST_CASE("the two algorithms agree on a symmetric varying instance") {
  const EigenBasis basis = build_basis(kNeu, 32);
  const CooperativeOperator op =
      assemble(basis, {1.0, 1.0}, {0.5, 0.5}, varying());
  REQUIRE(op.symmetric);
  const PrincipalEigenpair sym = principal_symmetric(basis, op);
  const PrincipalEigenpair kr =
      principal_krein_rutman(basis, {1.0, 1.0}, {0.5, 0.5}, varying());
  CHECK(sym.lambda_p == doctest::Approx(kr.lambda_p).epsilon(1e-8));
  CHECK(sym.method == "symmetric");
  CHECK(kr.method == "krein_rutman");
}

TEST_CASE("nonsymmetric constant coupling goes through the positive map") {
  // Off-diagonals -0.5 and -2.0: bottom eigenvalue 2 - sqrt(1) = 1.
  const Eigen::Matrix2d C = matrix2(2.0, -0.5, -2.0, 2.0);
  const EigenBasis basis = build_basis(kNeu, 24);
  const PrincipalEigenpair eig =
      principal_auto(basis, {1.0, 1.0}, {0.5, 0.5}, constant_matrix(C));
  CHECK(eig.method == "krein_rutman");
  CHECK(eig.lambda_p ==
        doctest::Approx(ref::bottom_eigenvalue_2x2(C)).epsilon(1e-8));
  CHECK(eig.phi.u.minCoeff() > 0.0);
  CHECK(eig.phi.v.minCoeff() > 0.0);
}

TEST_CASE("rayleigh quotients never undercut the principal eigenvalue") {
  const EigenBasis basis = build_basis(kNeu, 24);
  const CooperativeOperator op =
      assemble(basis, {1.0, 1.0}, {0.5, 0.5}, varying());
  const PrincipalEigenpair eig = principal_symmetric(basis, op);

  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd u(op.M.rows());
    for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = gauss(rng);
    u.normalize();
    CHECK(rayleigh_quotient(op, u) >= eig.lambda_p - tol::rayleigh_slack);
  }
}

TEST_CASE("diffusion gradient matches finite differences and stays signed") {
  const EigenBasis basis = build_basis(kNeu, 32);
  const Pair2 d{1.0, 1.0};
  const Pair2 s{0.5, 0.5};
  const PrincipalEigenpair eig = principal_auto(basis, d, s, varying());
  const Pair2 grad = grad_lambda_d(basis, d, s, eig);

  for (int i = 0; i < 2; ++i) {
    CHECK(grad[i] >= 0.0);
    Pair2 dp = d, dm = d;
    dp[i] += tol::grad_fd_step;
    dm[i] -= tol::grad_fd_step;
    const double fd = (principal_auto(basis, dp, s, varying()).lambda_p -
                       principal_auto(basis, dm, s, varying()).lambda_p) /
                      (2.0 * tol::grad_fd_step);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-4));
  }

  // A constant coupling has a flat eigenvalue: the gradient is exactly zero.
  const PrincipalEigenpair flat =
      principal_auto(basis, d, s, constant_matrix(matrix2(2, -1, -1, 2)));
  const Pair2 zero = grad_lambda_d(basis, d, s, flat);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
}

TEST_CASE("certified bounds bracket the eigenvalue from both sides") {
  const EigenBasis basis = build_basis(kNeu, 24);
  const MatrixField A = constant_matrix(matrix2(2, -1, -1, 2));
  const PrincipalEigenpair eig =
      principal_auto(basis, {1.0, 1.0}, {0.5, 0.5}, A);
  const double lower = certify_bound(basis, {1.0, 1.0}, {0.5, 0.5}, A,
                                     eig.phi, BoundDirection::lower);
  const double upper = certify_bound(basis, {1.0, 1.0}, {0.5, 0.5}, A,
                                     eig.phi, BoundDirection::upper);
  CHECK(lower <= eig.lambda_p + tol::bound_slack);
  CHECK(upper >= eig.lambda_p - tol::bound_slack);
  CHECK(upper - lower < 1e-6);
}

TEST_CASE("weak maximum principle follows the sign of lambda_p") {
  const EigenBasis basis = build_basis(kNeu, 24);
  const MaxPrincipleReport pos = check_weak_max_principle(
      basis, {1.0, 1.0}, {0.5, 0.5},
      constant_matrix(matrix2(1.5, -1, -1, 1.5)), 10, 99);
  CHECK(pos.lambda_p == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(pos.holds);
  CHECK(pos.min_solution_value >= -tol::maxprin_negativity);
  CHECK_FALSE(pos.counterexample);

  const MaxPrincipleReport neg = check_weak_max_principle(
      basis, {1.0, 1.0}, {0.5, 0.5},
      constant_matrix(matrix2(0.5, -1, -1, 0.5)), 10, 99);
  CHECK(neg.lambda_p == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(neg.counterexample);
  CHECK(neg.counterexample_sol_min < 0.0);
  CHECK(neg.counterexample_rhs_min >= -tol::maxprin_negativity);
}
