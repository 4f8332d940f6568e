#include "fraccoop/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

namespace fraccoop::ref {
namespace {

// Analytic Laplacian eigenvalues, ascending, ties by lexicographic index.
std::vector<double> laplacian_eigenvalues(const Domain& domain, int n_modes) {
  const int base = domain.bc == BC::dirichlet ? 1 : 0;
  std::vector<double> mu;
  mu.reserve(static_cast<std::size_t>(n_modes));
  if (domain.kind == Domain::Kind::interval) {
    for (int k = 0; k < n_modes; ++k) {
      const double om = (base + k) * M_PI / domain.lx;
      mu.push_back(om * om);
    }
    return mu;
  }
  // Any of the n_modes smallest tensor eigenvalues has both 1D indices among
  // the n_modes smallest per axis, so a (n_modes)^2 candidate grid suffices.
  std::vector<std::tuple<double, int, int>> all;
  for (int kx = base; kx < base + n_modes; ++kx)
    for (int ky = base; ky < base + n_modes; ++ky) {
      const double ox = kx * M_PI / domain.lx;
      const double oy = ky * M_PI / domain.ly;
      all.emplace_back(ox * ox + oy * oy, kx, ky);
    }
  std::sort(all.begin(), all.end());
  for (int k = 0; k < n_modes; ++k) mu.push_back(std::get<0>(all[k]));
  return mu;
}

}  // namespace

double bottom_eigenvalue_2x2(const Eigen::Matrix2d& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double disc =
      (m(0, 0) - m(1, 1)) * (m(0, 0) - m(1, 1)) + 4.0 * m(0, 1) * m(1, 0);
  return 0.5 * (tr - std::sqrt(std::max(disc, 0.0)));
}

double constant_lambda_p(const Domain& domain, int n_modes, Pair2 d, Pair2 s,
                         const Eigen::Matrix2d& C) {
  double best = std::numeric_limits<double>::infinity();
  for (double mu : laplacian_eigenvalues(domain, n_modes)) {
    Eigen::Matrix2d block = C;
    block(0, 0) += std::pow(d[0] * mu, s[0]);
    block(1, 1) += std::pow(d[1] * mu, s[1]);
    best = std::min(best, bottom_eigenvalue_2x2(block));
  }
  return best;
}

Eigen::VectorXd rk4(
    const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& f,
    Eigen::VectorXd y, double t0, double t1, long long steps) {
  if (steps < 1) steps = 1;
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (long long n = 0; n < steps; ++n) {
    const double t = t0 + h * static_cast<double>(n);
    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
    const Eigen::VectorXd k4 = f(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

std::optional<ScalarSteady> scalar_steady(double a, double b,
                                          const Nonlinearity& H,
                                          const Nonlinearity& G) {
  const auto excess = [&](double v) { return b * v - G(H(v) / a); };
  // A positive root needs the excess to start negative...
  if (!(excess(1e-12) < 0.0)) return std::nullopt;
  // ...and saturation makes it positive eventually.
  double hi = 1.0;
  int guard = 0;
  while (excess(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) return std::nullopt;
  }
  double lo = 1e-12;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  const double v = 0.5 * (lo + hi);
  return ScalarSteady{H(v) / a, v};
}

}  // namespace fraccoop::ref
