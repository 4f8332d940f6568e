#include "fraccoop/field.hpp"

#include <cmath>
#include <limits>

#include "fraccoop/tolerances.hpp"

namespace fraccoop {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// 6th-order one-sided first-derivative stencil (7 points), used to verify the
// vanishing normal derivative of cosine series at the boundary.
double one_sided_derivative(const Eigen::ArrayXd& f, Eigen::Index i0,
                            Eigen::Index stride, double h) {
  static const double c[7] = {-49.0 / 20, 6.0, -15.0 / 2, 20.0 / 3,
                              -15.0 / 4,  6.0 / 5, -1.0 / 6};
  double acc = 0.0;
  for (int j = 0; j < 7; ++j) acc += c[j] * f[i0 + j * stride];
  return acc / h;
}

}  // namespace

ScalarField constant_field(double c) { return ScalarField{{{0, 0, c}}}; }

ScalarField cosine_field(double c0, int k, double amp) {
  return ScalarField{{{0, 0, c0}, {k, 0, amp}}};
}

Eigen::ArrayXd field_values(const ScalarField& field, const Domain& domain,
                            const Grid& grid, bool check_trace) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(grid.size());
  for (const CosineTerm& t : field.terms) {
    if (t.kx < 0 || t.ky < 0)
      throw invalid_input("field term indices must be nonnegative");
    if (domain.kind == Domain::Kind::interval && t.ky != 0)
      throw invalid_input("interval fields take single-index cosine terms");
    Eigen::ArrayXd term = (t.kx * kPi / domain.lx * grid.x).cos();
    if (domain.kind == Domain::Kind::rectangle && t.ky != 0)
      term *= (t.ky * kPi / domain.ly * grid.y).cos();
    out += t.amp * term;
  }

  if (check_trace && grid.rx >= 8) {
    // One-sided FD of the normal derivative at the domain endpoints (and, on
    // rectangles, along each edge midline sample).  Cosine series make these
    // vanish up to the stencil's truncation error.
    const double hx = grid.x[grid.ry] - grid.x[0];
    auto check = [&](double val) {
      if (std::abs(val) > tol::neumann_trace)
        throw invalid_input("field violates the vanishing normal derivative at the boundary");
    };
    if (grid.ry == 1) {
      check(one_sided_derivative(out, 0, 1, hx));
      check(-one_sided_derivative(out, grid.size() - 1, -1, hx));
    } else {
      const double hy = grid.y[1] - grid.y[0];
      const Eigen::Index midy = grid.ry / 2, midx = grid.rx / 2;
      check(one_sided_derivative(out, midy, grid.ry, hx));
      check(-one_sided_derivative(out, (Eigen::Index)(grid.rx - 1) * grid.ry + midy,
                                  -grid.ry, hx));
      check(one_sided_derivative(out, midx * grid.ry, 1, hy));
      check(-one_sided_derivative(out, midx * grid.ry + grid.ry - 1, -1, hy));
    }
  }
  return out;
}

MatrixField constant_matrix(const Eigen::Matrix2d& m) {
  MatrixField A;
  A.a11 = constant_field(m(0, 0));
  A.a12 = constant_field(m(0, 1));
  A.a21 = constant_field(m(1, 0));
  A.a22 = constant_field(m(1, 1));
  return A;
}

MatrixFieldValues materialize(const MatrixField& A, const Domain& domain,
                              const Grid& grid) {
  MatrixFieldValues v;
  v.a11 = field_values(A.a11, domain, grid);
  v.a12 = field_values(A.a12, domain, grid);
  v.a21 = field_values(A.a21, domain, grid);
  v.a22 = field_values(A.a22, domain, grid);
  if (v.a12.maxCoeff() >= 0.0 || v.a21.maxCoeff() >= 0.0)
    throw invalid_input(
        "coupling a12 and a21 must be strictly negative on the whole domain");
  v.symmetric = (v.a12 - v.a21).abs().maxCoeff() <= 1e-14;
  return v;
}

Perron2x2 perron_2x2(const Eigen::Matrix2d& m) {
  if (m(0, 1) > 0.0 || m(1, 0) > 0.0)
    throw invalid_input("perron_2x2 requires nonpositive off-diagonal entries");
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * b * c);  // b*c >= 0
  Perron2x2 out;
  out.lambda_bar = 0.5 * (a + d - disc);
  // Candidate eigenvectors from either row; both are entrywise nonnegative.
  Eigen::Vector2d va(-b, a - out.lambda_bar);
  Eigen::Vector2d vb(d - out.lambda_bar, -c);
  Eigen::Vector2d v = va.norm() >= vb.norm() ? va : vb;
  if (v.norm() == 0.0) v = Eigen::Vector2d(1.0, 0.0);  // scalar multiple of I
  out.eigvec = v / v.norm();
  return out;
}

GridMin min_principal_over_domain(const MatrixField& A, const Domain& domain,
                                  const Grid& grid) {
  const MatrixFieldValues v = materialize(A, domain, grid);
  GridMin best;
  best.value = std::numeric_limits<double>::infinity();
  for (Eigen::Index p = 0; p < grid.size(); ++p) {
    Eigen::Matrix2d m;
    m << v.a11[p], v.a12[p], v.a21[p], v.a22[p];
    const double lb = perron_2x2(m).lambda_bar;
    if (lb < best.value) {
      best.value = lb;
      best.arg_x = grid.x[p];
      best.arg_y = grid.y.size() ? grid.y[p] : 0.0;
    }
  }
  return best;
}

Eigen::Matrix2d matrix_average(const MatrixField& A, const Domain& domain,
                               const Grid& grid) {
  const MatrixFieldValues v = materialize(A, domain, grid);
  const double vol = grid.w.sum();
  Eigen::Matrix2d m;
  m << (v.a11 * grid.w).sum(), (v.a12 * grid.w).sum(),
       (v.a21 * grid.w).sum(), (v.a22 * grid.w).sum();
  return m / vol;
}

double max_pointwise_norm(const MatrixFieldValues& A) {
  double worst = 0.0;
  for (Eigen::Index p = 0; p < A.a11.size(); ++p) {
    Eigen::Matrix2d m;
    m << A.a11[p], A.a12[p], A.a21[p], A.a22[p];
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
    worst = std::max(worst, svd.singularValues()[0]);
  }
  return worst;
}

}  // namespace fraccoop
