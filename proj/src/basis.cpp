#include "fraccoop/basis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace fraccoop {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_positive_length(double v, const char* what) {
  if (!(v > 0.0)) throw invalid_input(std::string(what) + " must be strictly positive");
}

// 1D quadrature nodes/weights: composite trapezoid on [0, L] with n points.
void axis_rule(double L, int n, Eigen::ArrayXd& x, Eigen::ArrayXd& w) {
  const double h = L / (n - 1);
  x.resize(n);
  w.resize(n);
  for (int j = 0; j < n; ++j) {
    x[j] = h * j;
    w[j] = h;
  }
  x[n - 1] = L;  // close the interval exactly
  w[0] *= 0.5;
  w[n - 1] *= 0.5;
}

// 1D eigenfunction values, L2-normalized analytically: cosine family for
// Neumann (k >= 0), sine family for Dirichlet (k >= 1).
Eigen::ArrayXd axis_mode(const Eigen::ArrayXd& x, double L, int k, BC bc) {
  Eigen::ArrayXd out(x.size());
  if (bc == BC::neumann) {
    if (k == 0) {
      out.setConstant(1.0 / std::sqrt(L));
    } else {
      out = (std::sqrt(2.0 / L)) * (k * kPi / L * x).cos();
    }
  } else {
    out = (std::sqrt(2.0 / L)) * (k * kPi / L * x).sin();
    out[0] = 0.0;              // exact boundary zeros
    out[x.size() - 1] = 0.0;
  }
  return out;
}

}  // namespace

Domain make_interval(double length, BC bc) {
  require_positive_length(length, "interval length");
  Domain d;
  d.kind = Domain::Kind::interval;
  d.lx = length;
  d.ly = 0.0;
  d.bc = bc;
  return d;
}

Domain make_rectangle(double lx, double ly, BC bc) {
  require_positive_length(lx, "rectangle lx");
  require_positive_length(ly, "rectangle ly");
  Domain d;
  d.kind = Domain::Kind::rectangle;
  d.lx = lx;
  d.ly = ly;
  d.bc = bc;
  return d;
}

Domain scale_domain(const Domain& domain, double l) {
  if (!(l > 0.0)) throw invalid_input("domain scale factor must be strictly positive");
  Domain out = domain;
  out.lx *= l;
  if (domain.kind == Domain::Kind::rectangle) out.ly *= l;
  return out;
}

bool Grid::is_boundary(Eigen::Index p) const {
  if (ry == 1) return p == 0 || p == rx - 1;
  const Eigen::Index ix = p / ry, iy = p % ry;
  return ix == 0 || ix == rx - 1 || iy == 0 || iy == ry - 1;
}

EigenBasis build_basis(const Domain& domain, int n_modes, int resolution) {
  if (n_modes < 1) throw invalid_input("n_modes must be at least 1");
  const int k0 = domain.bc == BC::neumann ? 0 : 1;

  // Choose the tensor indices first; the resolution requirement depends on
  // the largest 1D index actually used.
  std::vector<Mode> modes;
  if (domain.kind == Domain::Kind::interval) {
    modes.reserve(n_modes);
    for (int k = k0; k < k0 + n_modes; ++k) {
      const double om = k * kPi / domain.lx;
      modes.push_back({k, 0, om * om});
    }
  } else {
    std::vector<std::tuple<double, int, int>> cand;
    for (int kx = k0; kx <= k0 + n_modes; ++kx)
      for (int ky = k0; ky <= k0 + n_modes; ++ky) {
        const double ox = kx * kPi / domain.lx, oy = ky * kPi / domain.ly;
        cand.emplace_back(ox * ox + oy * oy, kx, ky);
      }
    std::sort(cand.begin(), cand.end());
    modes.reserve(n_modes);
    for (int i = 0; i < n_modes; ++i) {
      auto [mu, kx, ky] = cand[i];
      modes.push_back({kx, ky, mu});
    }
  }

  int max_index = 0;
  for (const Mode& m : modes) max_index = std::max({max_index, m.kx, m.ky});
  const int min_resolution = domain.kind == Domain::Kind::interval
                                 ? 4 * n_modes
                                 : 4 * (max_index + 1);
  if (resolution <= 0) resolution = min_resolution;
  if (resolution < min_resolution)
    throw invalid_input("resolution too coarse: need at least " +
                        std::to_string(min_resolution) + " points per dimension, got " +
                        std::to_string(resolution));
  if (resolution < 3) resolution = 3;

  EigenBasis basis;
  basis.domain = domain;
  basis.n_modes = n_modes;
  basis.modes = std::move(modes);

  // Quadrature grid.
  Eigen::ArrayXd x1, w1, x2, w2;
  axis_rule(domain.lx, resolution, x1, w1);
  if (domain.kind == Domain::Kind::interval) {
    basis.grid.x = x1;
    basis.grid.w = w1;
    basis.grid.rx = resolution;
    basis.grid.ry = 1;
  } else {
    axis_rule(domain.ly, resolution, x2, w2);
    const Eigen::Index np = (Eigen::Index)resolution * resolution;
    basis.grid.x.resize(np);
    basis.grid.y.resize(np);
    basis.grid.w.resize(np);
    for (int ix = 0; ix < resolution; ++ix)
      for (int iy = 0; iy < resolution; ++iy) {
        const Eigen::Index p = (Eigen::Index)ix * resolution + iy;
        basis.grid.x[p] = x1[ix];
        basis.grid.y[p] = x2[iy];
        basis.grid.w[p] = w1[ix] * w2[iy];
      }
    basis.grid.rx = resolution;
    basis.grid.ry = resolution;
  }

  // Sample and normalize under the grid quadrature.
  basis.phi.resize(basis.n_modes, basis.grid.size());
  if (domain.kind == Domain::Kind::interval) {
    for (int k = 0; k < basis.n_modes; ++k)
      basis.phi.row(k) = axis_mode(basis.grid.x, domain.lx, basis.modes[k].kx,
                                   domain.bc).matrix().transpose();
  } else {
    Eigen::ArrayXd gx(basis.grid.rx), gy(basis.grid.ry);
    for (int i = 0; i < basis.grid.rx; ++i) gx[i] = x1[i];
    for (int i = 0; i < basis.grid.ry; ++i) gy[i] = x2[i];
    for (int k = 0; k < basis.n_modes; ++k) {
      const Eigen::ArrayXd fx = axis_mode(gx, domain.lx, basis.modes[k].kx, domain.bc);
      const Eigen::ArrayXd fy = axis_mode(gy, domain.ly, basis.modes[k].ky, domain.bc);
      for (int ix = 0; ix < basis.grid.rx; ++ix)
        for (int iy = 0; iy < basis.grid.ry; ++iy)
          basis.phi(k, (Eigen::Index)ix * basis.grid.ry + iy) = fx[ix] * fy[iy];
    }
  }
  for (int k = 0; k < basis.n_modes; ++k) {
    const double nrm = std::sqrt(
        (basis.phi.row(k).transpose().array().square() * basis.grid.w).sum());
    basis.phi.row(k) /= nrm;
  }
  return basis;
}

EigenBasis build_basis(const Domain& domain, int n_modes) {
  return build_basis(domain, n_modes, 0);
}

double inner_product(const Eigen::ArrayXd& f, const Eigen::ArrayXd& g,
                     const Grid& grid) {
  if (f.size() != grid.size() || g.size() != grid.size())
    throw invalid_input("inner_product: grid size mismatch");
  return (f * g * grid.w).sum();
}

Eigen::VectorXd project(const Eigen::ArrayXd& values, const EigenBasis& basis) {
  if (values.size() != basis.grid.size())
    throw invalid_input("project: values not sampled on the basis grid");
  return basis.phi * (values * basis.grid.w).matrix();
}

Eigen::ArrayXd synthesize(const Eigen::VectorXd& coeffs, const EigenBasis& basis) {
  if (coeffs.size() > basis.n_modes)
    throw invalid_input("synthesize: more coefficients than basis modes");
  if (coeffs.size() == basis.n_modes)
    return (basis.phi.transpose() * coeffs).array();
  return (basis.phi.topRows(coeffs.size()).transpose() * coeffs).array();
}

}  // namespace fraccoop
