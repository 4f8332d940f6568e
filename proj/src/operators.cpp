#include "fraccoop/operators.hpp"

#include <cmath>

#include "fraccoop/tolerances.hpp"

namespace fraccoop {
namespace {

void require_ds(Pair2 d, Pair2 s) {
  for (int i = 0; i < 2; ++i) {
    if (!(d[i] > 0.0)) throw invalid_input("diffusion coefficients must be positive");
    if (!(s[i] > 0.0 && s[i] <= 1.0))
      throw invalid_input("fractional orders must lie in (0, 1]");
  }
}

double sup_norm(const GridPair& g) {
  return std::max(g.u.abs().maxCoeff(), g.v.abs().maxCoeff());
}

}  // namespace

Eigen::ArrayXd fractional_multipliers(const EigenBasis& basis, double d, double s) {
  Eigen::ArrayXd out(basis.n_modes);
  const double ds = std::pow(d, s);
  for (int k = 0; k < basis.n_modes; ++k)
    out[k] = ds * std::pow(basis.modes[k].mu, s);
  return out;
}

Eigen::MatrixXd galerkin_matrix(const EigenBasis& basis,
                                const Eigen::ArrayXd& field_on_grid) {
  if (field_on_grid.size() != basis.grid.size())
    throw invalid_input("galerkin_matrix: field not sampled on the basis grid");
  const Eigen::VectorXd wa = (field_on_grid * basis.grid.w).matrix();
  Eigen::MatrixXd G = basis.phi * wa.asDiagonal() * basis.phi.transpose();
  // <a phi_l, phi_k> is symmetric in (k, l); enforce it exactly.
  G = 0.5 * (G + G.transpose()).eval();
  return G;
}

CooperativeOperator assemble(const EigenBasis& basis, Pair2 d, Pair2 s,
                             const MatrixField& A) {
  require_ds(d, s);
  const MatrixFieldValues vals = materialize(A, basis.domain, basis.grid);
  const int N = basis.n_modes;

  CooperativeOperator op;
  op.d = d;
  op.s = s;
  op.bc = basis.domain.bc;
  op.symmetric = vals.symmetric;
  op.n_modes = N;
  op.M.setZero(2 * N, 2 * N);

  op.M.topLeftCorner(N, N) = galerkin_matrix(basis, vals.a11);
  op.M.topRightCorner(N, N) = galerkin_matrix(basis, vals.a12);
  op.M.bottomLeftCorner(N, N) = galerkin_matrix(basis, vals.a21);
  op.M.bottomRightCorner(N, N) = galerkin_matrix(basis, vals.a22);
  op.M.topLeftCorner(N, N).diagonal() +=
      fractional_multipliers(basis, d[0], s[0]).matrix();
  op.M.bottomRightCorner(N, N).diagonal() +=
      fractional_multipliers(basis, d[1], s[1]).matrix();
  return op;
}

Eigen::VectorXd apply_fractional(const EigenBasis& basis, double d, double s,
                                 const Eigen::VectorXd& coeffs) {
  require_ds({d, d}, {s, s});
  if (coeffs.size() != basis.n_modes)
    throw invalid_input("apply_fractional: coefficient length mismatch");
  return (coeffs.array() * fractional_multipliers(basis, d, s)).matrix();
}

Eigen::VectorXd resolvent_apply(const EigenBasis& basis, Pair2 d, Pair2 s,
                                double beta, const Eigen::VectorXd& stacked) {
  require_ds(d, s);
  if (!(beta > 0.0)) throw invalid_input("resolvent shift beta must be positive");
  const int N = basis.n_modes;
  if (stacked.size() != 2 * N)
    throw invalid_input("resolvent_apply: expected stacked coefficient pair");
  Eigen::VectorXd out(2 * N);
  out.head(N) = (stacked.head(N).array() /
                 (fractional_multipliers(basis, d[0], s[0]) + beta)).matrix();
  out.tail(N) = (stacked.tail(N).array() /
                 (fractional_multipliers(basis, d[1], s[1]) + beta)).matrix();
  return out;
}

Eigen::VectorXd semigroup_step_one(const EigenBasis& basis, double d, double s,
                                   double t, const Eigen::VectorXd& coeffs) {
  if (t < 0.0) throw invalid_input("semigroup time must be nonnegative");
  if (coeffs.size() != basis.n_modes)
    throw invalid_input("semigroup_step: coefficient length mismatch");
  return (coeffs.array() * (-t * fractional_multipliers(basis, d, s)).exp()).matrix();
}

Eigen::VectorXd semigroup_step(const EigenBasis& basis, Pair2 d, Pair2 s,
                               double t, const Eigen::VectorXd& stacked) {
  const int N = basis.n_modes;
  if (stacked.size() != 2 * N)
    throw invalid_input("semigroup_step: expected stacked coefficient pair");
  Eigen::VectorXd out(2 * N);
  out.head(N) = semigroup_step_one(basis, d[0], s[0], t, stacked.head(N));
  out.tail(N) = semigroup_step_one(basis, d[1], s[1], t, stacked.tail(N));
  return out;
}

double default_beta(double lambda, const MatrixFieldValues& A) {
  const double row1 = (A.a11.abs() + A.a12.abs()).maxCoeff();
  const double row2 = (A.a21.abs() + A.a22.abs()).maxCoeff();
  return 2.0 * (std::abs(lambda) + std::max(row1, row2) + 1.0);
}

KreinRutmanRadius krein_rutman_radius(const EigenBasis& basis, Pair2 d, Pair2 s,
                                      const MatrixField& A, double lambda,
                                      double beta) {
  require_ds(d, s);
  const MatrixFieldValues vals = materialize(A, basis.domain, basis.grid);
  // Positivity floor: the zeroth-order part -a_ii + lambda + beta must be
  // nonnegative on the grid for the map to preserve the cone.
  const double floor1 = (-vals.a11).minCoeff() + lambda + beta;
  const double floor2 = (-vals.a22).minCoeff() + lambda + beta;
  if (!(floor1 > 0.0 && floor2 > 0.0))
    throw invalid_input("krein_rutman_radius: beta too small for this lambda");

  const int N = basis.n_modes;
  Eigen::MatrixXd A0(2 * N, 2 * N);  // Galerkin blocks of -A
  A0.topLeftCorner(N, N) = -galerkin_matrix(basis, vals.a11);
  A0.topRightCorner(N, N) = -galerkin_matrix(basis, vals.a12);
  A0.bottomLeftCorner(N, N) = -galerkin_matrix(basis, vals.a21);
  A0.bottomRightCorner(N, N) = -galerkin_matrix(basis, vals.a22);

  const Eigen::ArrayXd inv1 = 1.0 / (fractional_multipliers(basis, d[0], s[0]) + beta);
  const Eigen::ArrayXd inv2 = 1.0 / (fractional_multipliers(basis, d[1], s[1]) + beta);
  auto apply_K = [&](const Eigen::VectorXd& c) {
    Eigen::VectorXd z = A0 * c + (lambda + beta) * c;
    z.head(N) = (z.head(N).array() * inv1).matrix();
    z.tail(N) = (z.tail(N).array() * inv2).matrix();
    return z;
  };

  // Power iteration from the positive constant pair, sup-norm normalized on
  // the grid.  Convergence: two consecutive radius increments below tol.
  GridPair ones{Eigen::ArrayXd::Ones(basis.grid.size()),
                Eigen::ArrayXd::Ones(basis.grid.size())};
  Eigen::VectorXd c = project_pair(ones, basis);
  c /= sup_norm(synthesize_pair(c, basis));

  KreinRutmanRadius out;
  double prev = -1.0;
  int calm = 0;
  for (int it = 1; it <= tol::power_max_iter; ++it) {
    const Eigen::VectorXd z = apply_K(c);
    const GridPair zg = synthesize_pair(z, basis);
    const double r = sup_norm(zg);
    if (!(r > 0.0))
      throw numeric_failure("krein_rutman_radius: iterate collapsed to zero");
    c = z / r;
    out.iterations = it;
    calm = std::abs(r - prev) <= tol::power_tol * std::max(1.0, r) ? calm + 1 : 0;
    prev = r;
    if (calm >= 2) break;
  }
  if (calm < 2)
    throw numeric_failure("krein_rutman_radius: power iteration did not converge");
  out.radius = prev;
  out.direction = synthesize_pair(c, basis);
  const double dn = sup_norm(out.direction);
  out.direction.u /= dn;
  out.direction.v /= dn;
  return out;
}

CooperativeOperator limit_s0_assemble(const EigenBasis& basis,
                                      const MatrixField& A) {
  if (basis.domain.bc != BC::neumann)
    throw invalid_input("the small-order limit operator requires a Neumann basis");
  const MatrixFieldValues vals = materialize(A, basis.domain, basis.grid);
  const int N = basis.n_modes;

  CooperativeOperator op;
  op.d = {1.0, 1.0};
  op.s = {0.0, 0.0};
  op.bc = basis.domain.bc;
  op.symmetric = vals.symmetric;
  op.n_modes = N;
  op.M.setZero(2 * N, 2 * N);
  op.M.topLeftCorner(N, N) = galerkin_matrix(basis, vals.a11);
  op.M.topRightCorner(N, N) = galerkin_matrix(basis, vals.a12);
  op.M.bottomLeftCorner(N, N) = galerkin_matrix(basis, vals.a21);
  op.M.bottomRightCorner(N, N) = galerkin_matrix(basis, vals.a22);
  // I - P0 per component: multiplier 0 on the constant mode, 1 elsewhere.
  for (int k = 0; k < N; ++k) {
    const double m = basis.modes[k].mu > 0.0 ? 1.0 : 0.0;
    op.M(k, k) += m;
    op.M(N + k, N + k) += m;
  }
  return op;
}

Eigen::VectorXd stack(const Eigen::VectorXd& c1, const Eigen::VectorXd& c2) {
  Eigen::VectorXd out(c1.size() + c2.size());
  out << c1, c2;
  return out;
}

Eigen::VectorXd project_pair(const GridPair& g, const EigenBasis& basis) {
  return stack(project(g.u, basis), project(g.v, basis));
}

GridPair synthesize_pair(const Eigen::VectorXd& stacked, const EigenBasis& basis) {
  const int N = basis.n_modes;
  if (stacked.size() != 2 * N)
    throw invalid_input("synthesize_pair: expected stacked coefficient pair");
  return {synthesize(stacked.head(N), basis), synthesize(stacked.tail(N), basis)};
}

}  // namespace fraccoop
