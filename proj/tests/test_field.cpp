#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fraccoop/basis.hpp"
#include "fraccoop/field.hpp"
#include "fraccoop/reference.hpp"

using namespace fraccoop;

namespace {
const Domain kDom = make_interval(M_PI, BC::neumann);

MatrixField coupling(double diag_amp) {
  MatrixField A;
  A.a11 = cosine_field(2.0, 1, diag_amp);
  A.a12 = constant_field(-1.0);
  A.a21 = constant_field(-1.0);
  A.a22 = cosine_field(2.0, 1, diag_amp);
  return A;
}
}  // namespace

TEST_CASE("fields evaluate to their cosine series on the grid") {
  const EigenBasis basis = build_basis(kDom, 16);
  const Eigen::ArrayXd c = field_values(constant_field(3.5), kDom, basis.grid);
  CHECK(c.minCoeff() == 3.5);
  CHECK(c.maxCoeff() == 3.5);

  const Eigen::ArrayXd f =
      field_values(cosine_field(2.0, 1, 1.0), kDom, basis.grid);
  for (int p = 0; p < basis.grid.size(); ++p)
    CHECK(f[p] == doctest::Approx(2.0 + std::cos(basis.grid.x[p]))
                      .epsilon(1e-14));
}

TEST_CASE("malformed field terms are rejected") {
  const EigenBasis basis = build_basis(kDom, 8);
  ScalarField bad_index;
  bad_index.terms.push_back({-1, 0, 1.0});
  CHECK_THROWS_AS((void)field_values(bad_index, kDom, basis.grid),
                  invalid_input);
  ScalarField two_d;
  two_d.terms.push_back({1, 2, 1.0});
  CHECK_THROWS_AS((void)field_values(two_d, kDom, basis.grid), invalid_input);
}

TEST_CASE("bottom eigenvalue of cooperative 2x2 matrices") {
  Eigen::Matrix2d sym;
  sym << 2.0, -1.0, -1.0, 2.0;
  const Perron2x2 ps = perron_2x2(sym);
  CHECK(ps.lambda_bar == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ps.eigvec[0] > 0.0);
  CHECK(ps.eigvec[1] > 0.0);
  CHECK(ps.eigvec[0] == doctest::Approx(ps.eigvec[1]).epsilon(1e-13));

  Eigen::Matrix2d gen;
  gen << 1.0, -2.0, -0.5, 1.0;
  const Perron2x2 pg = perron_2x2(gen);
  CHECK(pg.lambda_bar ==
        doctest::Approx(ref::bottom_eigenvalue_2x2(gen)).epsilon(1e-14));
  CHECK(pg.lambda_bar == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  Eigen::Matrix2d wrong;
  wrong << 1.0, 0.5, -1.0, 1.0;
  CHECK_THROWS_AS((void)perron_2x2(wrong), invalid_input);
}

TEST_CASE("pointwise minimum of the bottom eigenvalue over the domain") {
  const EigenBasis basis = build_basis(kDom, 32);
  // Bottom eigenvalue of [[2+cos,-1],[-1,2+cos]] is 1 + cos(x): minimum 0 at
  // x = pi.
  const GridMin gm =
      min_principal_over_domain(coupling(1.0), kDom, basis.grid);
  CHECK(gm.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(gm.arg_x == doctest::Approx(M_PI).epsilon(1e-10));
}

TEST_CASE("matrix average integrates entry by entry") {
  const EigenBasis basis = build_basis(kDom, 32);
  const Eigen::Matrix2d avg = matrix_average(coupling(1.0), kDom, basis.grid);
  CHECK(avg(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(avg(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(perron_2x2(avg).lambda_bar == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("materializing a coupling validates the cooperative signs") {
  const EigenBasis basis = build_basis(kDom, 16);
  const MatrixFieldValues ok = materialize(coupling(1.0), kDom, basis.grid);
  CHECK(ok.symmetric);
  CHECK(ok.a12.maxCoeff() < 0.0);

  MatrixField bad = coupling(1.0);
  bad.a12 = constant_field(0.25);
  CHECK_THROWS_AS((void)materialize(bad, kDom, basis.grid), invalid_input);

  MatrixField skew = coupling(1.0);
  skew.a21 = constant_field(-2.0);
  CHECK_FALSE(materialize(skew, kDom, basis.grid).symmetric);
}

TEST_CASE("pointwise operator norm of a constant coupling") {
  const EigenBasis basis = build_basis(kDom, 16);
  Eigen::Matrix2d sym;
  sym << 2.0, -1.0, -1.0, 2.0;
  const MatrixFieldValues vals =
      materialize(constant_matrix(sym), kDom, basis.grid);
  // Eigenvalues are 1 and 3, so the spectral norm is 3.
  CHECK(max_pointwise_norm(vals) == doctest::Approx(3.0).epsilon(1e-12));
}
