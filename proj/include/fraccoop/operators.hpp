#pragma once
#include <Eigen/Dense>
#include <array>

#include "fraccoop/basis.hpp"
#include "fraccoop/field.hpp"

namespace fraccoop {

// A pair of grid functions (the two system components).
struct GridPair {
  Eigen::ArrayXd u, v;
};

using Pair2 = std::array<double, 2>;

// Per-mode multipliers d^s * mu_k^s of the fractional diffusion of one
// component.  Zero exactly at the Neumann constant mode.
Eigen::ArrayXd fractional_multipliers(const EigenBasis& basis, double d, double s);

// Discretized cooperative operator (-d Delta_B)^s + A as a 2N x 2N Galerkin
// matrix in the stacked basis (component 1 coefficients first).  Diagonal
// blocks are diag(d_i^{s_i} mu_k^{s_i}) + G(a_ii); off-blocks G(a12), G(a21)
// with G(a)[k,l] = <a phi_l, phi_k> by quadrature.
struct CooperativeOperator {
  Eigen::MatrixXd M;  // 2N x 2N
  Pair2 d{1.0, 1.0};
  Pair2 s{0.5, 0.5};
  BC bc = BC::neumann;
  bool symmetric = false;
  int n_modes = 0;
};

// s components may be anything in (0, 1]; s = 1 realizes the classical
// second-order operator through the same spectral formula.
CooperativeOperator assemble(const EigenBasis& basis, Pair2 d, Pair2 s,
                             const MatrixField& A);

// Galerkin matrix of the multiplication operator by one scalar field.
Eigen::MatrixXd galerkin_matrix(const EigenBasis& basis,
                                const Eigen::ArrayXd& field_on_grid);

// (coefficients) -> (coefficients) action of (-d Delta)^s on one component.
Eigen::VectorXd apply_fractional(const EigenBasis& basis, double d, double s,
                                 const Eigen::VectorXd& coeffs);

// ((-d Delta)^s + beta)^{-1} acting diagonally on stacked coefficients.
Eigen::VectorXd resolvent_apply(const EigenBasis& basis, Pair2 d, Pair2 s,
                                double beta, const Eigen::VectorXd& stacked);

// Multiplies mode k of each component by exp(-t * d^s * mu_k^s).
Eigen::VectorXd semigroup_step(const EigenBasis& basis, Pair2 d, Pair2 s,
                               double t, const Eigen::VectorXd& stacked);
Eigen::VectorXd semigroup_step_one(const EigenBasis& basis, double d, double s,
                                   double t, const Eigen::VectorXd& coeffs);

// Spectral radius of the positive map
//   K_{lambda,beta} u = ((-d Delta)^s + beta)^{-1} [A0 u + (lambda + beta) u],
// A0 = -A, by power iteration from the positive constant pair with sup-norm
// normalization.  beta must make A0 + (lambda + beta) I nonnegative on the
// cone, which is validated.  Also returns the converged direction.
struct KreinRutmanRadius {
  double radius = 0.0;
  GridPair direction;   // sup-normalized, positive
  int iterations = 0;
};

KreinRutmanRadius krein_rutman_radius(const EigenBasis& basis, Pair2 d, Pair2 s,
                                      const MatrixField& A, double lambda,
                                      double beta);

// Default beta for the map above: comfortably beyond the validated floor.
double default_beta(double lambda, const MatrixFieldValues& A);

// Galerkin matrix of A + I - P0 on a Neumann basis, where P0 projects each
// component onto its constant mode.  This is the small-order limit of the
// fractional diffusion: the multiplier of mode k tends to 1 for mu_k > 0 and
// stays 0 at the constant mode, independently of the diffusion coefficient.
CooperativeOperator limit_s0_assemble(const EigenBasis& basis,
                                      const MatrixField& A);

// Stacked-coefficient helpers.
Eigen::VectorXd stack(const Eigen::VectorXd& c1, const Eigen::VectorXd& c2);
Eigen::VectorXd project_pair(const GridPair& g, const EigenBasis& basis);
GridPair synthesize_pair(const Eigen::VectorXd& stacked, const EigenBasis& basis);

}  // namespace fraccoop
