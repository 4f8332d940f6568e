#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "fraccoop/operators.hpp"
#include "fraccoop/tolerances.hpp"

using namespace fraccoop;

namespace {
const Domain kDom = make_interval(M_PI, BC::neumann);

Eigen::Matrix2d sym_matrix() {
  Eigen::Matrix2d m;
  m << 2.0, -1.0, -1.0, 2.0;
  return m;
}
}  // namespace

TEST_CASE("fractional multipliers follow (d mu)^s") {
  const EigenBasis basis = build_basis(kDom, 8);
  const Eigen::ArrayXd mult = fractional_multipliers(basis, 2.0, 0.75);
  CHECK(mult[0] == 0.0);  // Neumann constant mode carries no diffusion
  for (int k = 1; k < 8; ++k)
    CHECK(mult[k] ==
          doctest::Approx(std::pow(2.0 * basis.modes[k].mu, 0.75))
              .epsilon(1e-13));

  const EigenBasis db = build_basis(make_interval(M_PI, BC::dirichlet), 4);
  const Eigen::ArrayXd dm = fractional_multipliers(db, 1.0, 0.5);
  CHECK(dm[0] == doctest::Approx(1.0).epsilon(1e-13));  // sqrt(mu_1) = 1
}

TEST_CASE("constant coupling assembles to diagonal-plus-identity blocks") {
  const int N = 12;
  const EigenBasis basis = build_basis(kDom, N);
  const CooperativeOperator op =
      assemble(basis, {1.0, 1.0}, {0.5, 0.5}, constant_matrix(sym_matrix()));
  CHECK(op.symmetric);
  CHECK(op.n_modes == N);

  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (int k = 0; k < N; ++k) {
    const double mult = std::sqrt(basis.modes[k].mu);
    expect(k, k) = mult + 2.0;
    expect(N + k, N + k) = mult + 2.0;
    expect(k, N + k) = -1.0;
    expect(N + k, k) = -1.0;
  }
  CHECK((op.M - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("galerkin matrix of a cosine multiplier couples neighbor modes") {
  const EigenBasis basis = build_basis(kDom, 10);
  const Eigen::ArrayXd one = Eigen::ArrayXd::Ones(basis.grid.size());
  const Eigen::MatrixXd gi = galerkin_matrix(basis, one);
  CHECK((gi - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <
        1e-12);

  // cos(x) shifts the mode index by one: <cos * phi_l, phi_k> vanishes for
  // |k - l| != 1 and the k <-> k+1 entries are 1/sqrt(2) (0 <-> 1) or 1/2.
  Eigen::ArrayXd cosx(basis.grid.size());
  for (int p = 0; p < basis.grid.size(); ++p)
    cosx[p] = std::cos(basis.grid.x[p]);
  const Eigen::MatrixXd gc = galerkin_matrix(basis, cosx);
  CHECK(gc(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(gc(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gc(0, 2) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK((gc - gc.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("resolvent inverts the shifted diffusion mode by mode") {
  const EigenBasis basis = build_basis(kDom, 16);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd c(32);
  for (int k = 0; k < 32; ++k) c[k] = gauss(rng);

  const Pair2 d{1.5, 0.7};
  const Pair2 s{0.4, 0.9};
  const double beta = 2.0;
  const Eigen::VectorXd res = resolvent_apply(basis, d, s, beta, c);
  // Apply the forward operator again: (op + beta) res == c.
  Eigen::VectorXd back(32);
  back.head(16) =
      apply_fractional(basis, d[0], s[0], res.head(16)) + beta * res.head(16);
  back.tail(16) =
      apply_fractional(basis, d[1], s[1], res.tail(16)) + beta * res.tail(16);
  CHECK((back - c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("semigroup step damps each mode by its exponential factor") {
  const EigenBasis basis = build_basis(kDom, 8);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(16);
  c[1] = 1.0;   // component 1, mode 1: mu = 1
  c[8] = 1.0;   // component 2, constant mode: no decay
  const Eigen::VectorXd stepped = semigroup_step(basis, {1.0, 1.0},
                                                 {0.5, 0.5}, 0.3, c);
  CHECK(stepped[1] == doctest::Approx(std::exp(-0.3)).epsilon(1e-13));
  CHECK(stepped[8] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(stepped.cwiseAbs().sum() ==
        doctest::Approx(stepped[1] + stepped[8]).epsilon(1e-13));
}

TEST_CASE("spectral radius of the positive map crosses one at lambda_p") {
  const EigenBasis basis = build_basis(kDom, 24);
  const MatrixField A = constant_matrix(sym_matrix());
  const MatrixFieldValues vals = materialize(A, kDom, basis.grid);

  // lambda_p = 1 for this instance; radius(lambda) - 1 has the sign of
  // lambda - lambda_p.
  const double beta = default_beta(1.0, vals);
  CHECK(beta == doctest::Approx(2.0 * (1.0 + 3.0 + 1.0)).epsilon(1e-12));

  const KreinRutmanRadius at = krein_rutman_radius(basis, {1.0, 1.0},
                                                   {0.5, 0.5}, A, 1.0, beta);
  CHECK(at.radius == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(at.direction.u.minCoeff() > 0.0);
  CHECK(at.direction.v.minCoeff() > 0.0);

  const double below =
      krein_rutman_radius(basis, {1.0, 1.0}, {0.5, 0.5}, A, 0.5,
                          default_beta(0.5, vals))
          .radius;
  const double above =
      krein_rutman_radius(basis, {1.0, 1.0}, {0.5, 0.5}, A, 1.5,
                          default_beta(1.5, vals))
          .radius;
  CHECK(below < 1.0);
  CHECK(above > 1.0);
}

TEST_CASE("small-order limit operator is coupling plus identity minus mean") {
  const int N = 10;
  const EigenBasis basis = build_basis(kDom, N);
  const CooperativeOperator op =
      limit_s0_assemble(basis, constant_matrix(sym_matrix()));

  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (int k = 0; k < N; ++k) {
    const double diff = k == 0 ? 0.0 : 1.0;  // 1 - P0 in mode space
    expect(k, k) = diff + 2.0;
    expect(N + k, N + k) = diff + 2.0;
    expect(k, N + k) = -1.0;
    expect(N + k, k) = -1.0;
  }
  CHECK((op.M - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("stacked helpers round-trip grid pairs") {
  const EigenBasis basis = build_basis(kDom, 16);
  GridPair g{Eigen::ArrayXd::Zero(basis.grid.size()),
             Eigen::ArrayXd::Zero(basis.grid.size())};
  for (int p = 0; p < basis.grid.size(); ++p) {
    g.u[p] = 1.0 + 0.5 * std::cos(basis.grid.x[p]);
    g.v[p] = 2.0 - 0.25 * std::cos(2.0 * basis.grid.x[p]);
  }
  const GridPair back = synthesize_pair(project_pair(g, basis), basis);
  CHECK((back.u - g.u).abs().maxCoeff() < 1e-12);
  CHECK((back.v - g.v).abs().maxCoeff() < 1e-12);
}
