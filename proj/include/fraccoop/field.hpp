#pragma once
#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fraccoop/basis.hpp"

namespace fraccoop {

// One cosine term amp * cos(kx*pi*x/lx) * cos(ky*pi*y/ly).  Cosine series
// have a vanishing normal derivative on the boundary by construction, which
// is what the coefficient fields of the operator require.
struct CosineTerm {
  int kx = 0;
  int ky = 0;
  double amp = 0.0;
};

// Scalar coefficient field as a finite cosine series.
struct ScalarField {
  std::vector<CosineTerm> terms;
};

ScalarField constant_field(double c);
// Interval helper: c0 + amp * cos(k*pi*x/L).
ScalarField cosine_field(double c0, int k, double amp);

// Samples the field on a grid.  Checks that the one-sided finite-difference
// normal derivative at boundary points stays below tolerance (a sanity check
// on the series construction, not a mathematical necessity).
Eigen::ArrayXd field_values(const ScalarField& field, const Domain& domain,
                            const Grid& grid, bool check_trace = true);

// 2x2 coupling matrix A(x); off-diagonals must be strictly negative on the
// grid (cooperative coupling), which is validated on materialization.
struct MatrixField {
  ScalarField a11, a12, a21, a22;
};

// Field values cached on one grid, plus the symmetry decision.
struct MatrixFieldValues {
  Eigen::ArrayXd a11, a12, a21, a22;
  bool symmetric = false;  // max |a12 - a21| <= 1e-14 on the grid
};

MatrixField constant_matrix(const Eigen::Matrix2d& m);

MatrixFieldValues materialize(const MatrixField& A, const Domain& domain,
                              const Grid& grid);

// Smallest-real-part eigenvalue of a 2x2 matrix with nonpositive
// off-diagonals, with its nonnegative unit eigenvector; closed form from the
// characteristic quadratic.  Such matrices always have a real bottom
// eigenvalue carrying a nonnegative eigenvector.
struct Perron2x2 {
  double lambda_bar = 0.0;
  Eigen::Vector2d eigvec;
};

Perron2x2 perron_2x2(const Eigen::Matrix2d& m);

// min over grid points of the pointwise bottom eigenvalue of A(x), with the
// first attaining point (ties broken by smallest coordinate = grid order).
struct GridMin {
  double value = 0.0;
  double arg_x = 0.0;
  double arg_y = 0.0;
};

GridMin min_principal_over_domain(const MatrixField& A, const Domain& domain,
                                  const Grid& grid);

// Entrywise quadrature average (1/|Omega|) * integral of A(x).
Eigen::Matrix2d matrix_average(const MatrixField& A, const Domain& domain,
                               const Grid& grid);

// max over grid points of the spectral norm of A(x); the potential part of
// the operator is bounded below by -this.
double max_pointwise_norm(const MatrixFieldValues& A);

}  // namespace fraccoop
