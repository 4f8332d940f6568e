#pragma once
#include <Eigen/Dense>
#include <array>
#include <string>

#include "fraccoop/operators.hpp"

namespace fraccoop {

// Principal eigenpair of the cooperative operator: the bottom eigenvalue,
// simple, carrying a sign-definite eigenfunction (fixed positive here).
struct PrincipalEigenpair {
  double lambda_p = 0.0;
  GridPair phi;                 // eigenfunction pair on the grid
  Eigen::VectorXd coeffs;       // stacked coefficients, unit 2-norm
  double residual = 0.0;        // sup-norm of K phi - lambda_p phi on the grid
  double positivity_margin = 0.0;  // grid min (interior only for Dirichlet)
  double spectral_gap = 0.0;       // lambda_2 - lambda_1
  std::array<double, 2> nonconstancy_margin{0.0, 0.0};  // per-component max-min
  std::string method;           // "symmetric" or "krein_rutman"
};

// Dense symmetric eigensolve; requires op.symmetric (coupling a12 == a21).
// Sign convention: quadrature mean of component 1 positive, ties broken by
// component 2.
PrincipalEigenpair principal_symmetric(const EigenBasis& basis,
                                       const CooperativeOperator& op);

// Bisection on lambda for r(K_{lambda,beta}) = 1 (the radius is strictly
// increasing in lambda), bracketed by Gershgorin bounds of the assembled
// matrix.  Works for asymmetric coupling too.  tol is on lambda.
PrincipalEigenpair principal_krein_rutman(const EigenBasis& basis, Pair2 d,
                                          Pair2 s, const MatrixField& A,
                                          double tol = 1e-10);

// Dispatch: dense symmetric solve when the coupling is symmetric, otherwise
// the Krein-Rutman bisection.
PrincipalEigenpair principal_auto(const EigenBasis& basis, Pair2 d, Pair2 s,
                                  const MatrixField& A);

// <M u, u> / <u, u> in stacked coefficients.
double rayleigh_quotient(const CooperativeOperator& op,
                         const Eigen::VectorXd& u);

// Analytic derivative of lambda_p with respect to each diffusion
// coefficient: s_i d_i^{-1} <(-d_i Delta)^{s_i} phi_i, phi_i> / ||phi||^2,
// evaluated spectrally from the eigenpair's coefficients.  Coefficients at
// roundoff scale are treated as exact zeros (a constant eigenfunction gives
// exactly (0, 0)).  Rejects eigenpairs whose residual is above the staleness
// threshold.
std::array<double, 2> grad_lambda_d(const EigenBasis& basis, Pair2 d, Pair2 s,
                                    const PrincipalEigenpair& pair);

enum class BoundDirection { lower, upper };

// Certified one-sided bound on lambda_p from a positive test pair:
//   lower: max lambda with K phi - lambda phi >= 0, i.e. min_x min_i of
//          (K phi)_i / phi_i  (certifies lambda <= lambda_p);
//   upper: the symmetric max ratio (certifies lambda >= lambda_p).
double certify_bound(const EigenBasis& basis, Pair2 d, Pair2 s,
                     const MatrixField& A, const GridPair& phi,
                     BoundDirection direction);

// Empirical check of the weak maximum principle: lambda_p > 0 must make
// K u = f order-preserving (f >= 0 -> u >= 0); lambda_p <= 0 admits the
// explicit counterexample u = -phi_1.
struct MaxPrincipleReport {
  double lambda_p = 0.0;
  bool holds = false;        // principle verified on all trials
  bool borderline = false;   // |lambda_p| below tolerance; nothing asserted
  int trials = 0;
  double min_solution_value = 0.0;  // most negative grid value seen
  bool counterexample = false;      // u = -phi_1 produced (lambda_p <= 0)
  double counterexample_rhs_min = 0.0;  // min of K u (should be >= 0)
  double counterexample_sol_min = 0.0;  // min of u (negative)
};

MaxPrincipleReport check_weak_max_principle(const EigenBasis& basis, Pair2 d,
                                            Pair2 s, const MatrixField& A,
                                            int trials, unsigned long long seed);

}  // namespace fraccoop
