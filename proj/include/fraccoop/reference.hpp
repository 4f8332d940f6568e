#pragma once
#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fraccoop/basis.hpp"
#include "fraccoop/epidemic.hpp"
#include "fraccoop/operators.hpp"

// Independent reference implementations used to cross-check the spectral
// solvers.  Everything here recomputes from first principles (analytic
// Laplacian eigenvalues, closed-form 2x2 spectra, classic time steppers)
// without touching the Galerkin assembly paths.
namespace fraccoop::ref {

// Smallest eigenvalue of a real 2x2 matrix whose off-diagonal product is
// nonnegative (real spectrum), from the characteristic quadratic.
double bottom_eigenvalue_2x2(const Eigen::Matrix2d& m);

// Constant-coupling principal eigenvalue by per-mode brute force: for each
// Laplacian eigenvalue mu the operator restricts to the 2x2 block
// diag((d1 mu)^s1, (d2 mu)^s2) + C, and lambda_p is the minimum over modes
// of the block's bottom eigenvalue.  Laplacian eigenvalues are enumerated
// from the analytic formulas, independent of build_basis.
double constant_lambda_p(const Domain& domain, int n_modes, Pair2 d, Pair2 s,
                         const Eigen::Matrix2d& C);

// Classic fourth-order Runge-Kutta endpoint for y' = f(t, y).
Eigen::VectorXd rk4(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& f,
    Eigen::VectorXd y, double t0, double t1, long long steps);

// Positive root of the constant-coefficient steady system a u = H(v),
// b v = G(u), found by scalar bisection on the excess b v - G(H(v)/a).
// Empty when only the trivial state exists.
struct ScalarSteady {
  double u = 0.0;
  double v = 0.0;
};
std::optional<ScalarSteady> scalar_steady(double a, double b,
                                          const Nonlinearity& H,
                                          const Nonlinearity& G);

}  // namespace fraccoop::ref
