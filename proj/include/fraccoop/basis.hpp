#pragma once
#include <Eigen/Dense>
#include <vector>

#include "fraccoop/errors.hpp"

namespace fraccoop {

enum class BC { dirichlet, neumann };

// Model domain: an interval (0, L) or an axis-aligned rectangle
// (0, lx) x (0, ly), with one boundary condition on the whole boundary.
struct Domain {
  enum class Kind { interval, rectangle };
  Kind kind = Kind::interval;
  double lx = 0.0;  // interval length, or rectangle x-extent
  double ly = 0.0;  // rectangle y-extent (unused for intervals)
  BC bc = BC::neumann;

  int dim() const { return kind == Kind::interval ? 1 : 2; }
  double measure() const { return kind == Kind::interval ? lx : lx * ly; }
};

Domain make_interval(double length, BC bc);
Domain make_rectangle(double lx, double ly, BC bc);

// Returns the domain with every length multiplied by l.  Laplacian
// eigenvalues transform as mu_k(l * Omega) = mu_k(Omega) / l^2.
Domain scale_domain(const Domain& domain, double l);

// Composite-trapezoid quadrature grid covering the closure of the domain.
// Points are stored flattened; for rectangles index p = ix * ry + iy.
struct Grid {
  Eigen::ArrayXd x;  // per-point x coordinate
  Eigen::ArrayXd y;  // per-point y coordinate (empty for intervals)
  Eigen::ArrayXd w;  // per-point quadrature weight (endpoints halved per axis)
  int rx = 0;        // points along x
  int ry = 1;        // points along y (1 for intervals)

  Eigen::Index size() const { return x.size(); }
  bool is_boundary(Eigen::Index p) const;
};

// One Laplacian eigenpair: tensor index (kx, ky), eigenvalue mu, and the
// sampled eigenfunction on the grid (row of EigenBasis::phi).
struct Mode {
  int kx = 0;
  int ky = 0;
  double mu = 0.0;
};

// Truncated eigenbasis of -Delta with the domain's boundary condition.
// phi(k, p) holds eigenfunction k at grid point p; rows are L2-orthonormal
// under the grid quadrature.  Immutable after construction.
struct EigenBasis {
  Domain domain;
  Grid grid;
  std::vector<Mode> modes;  // sorted by mu, ties by lexicographic (kx, ky)
  Eigen::MatrixXd phi;      // n_modes x grid.size()
  int n_modes = 0;
};

// Analytic eigenbasis construction.  resolution = grid points per dimension;
// it must be at least 4x the modal bandwidth (4 * n_modes on intervals,
// 4 * (max 1D index + 1) on rectangles) or the call is rejected.
EigenBasis build_basis(const Domain& domain, int n_modes, int resolution);
EigenBasis build_basis(const Domain& domain, int n_modes);  // default resolution

// Quadrature L2 pairing of two grid functions.
double inner_product(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g,
                     const Grid& grid);

// Spectral coefficients u_k = <u, phi_k> by quadrature.
Eigen::VectorXd project(const Eigen::ArrayXd& values, const EigenBasis& basis);

// Sum of coeffs[k] * phi_k on the grid.  Accepts vectors shorter than
// n_modes; rejects longer ones.
Eigen::ArrayXd synthesize(const Eigen::VectorXd& coeffs, const EigenBasis& basis);

}  // namespace fraccoop
