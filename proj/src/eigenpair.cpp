#include "fraccoop/eigenpair.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fraccoop/tolerances.hpp"

namespace fraccoop {
namespace {

// Smallest grid value over both components; Dirichlet boundaries carry exact
// zeros, so only interior nodes are meaningful there.
double relevant_min(const GridPair& g, const EigenBasis& basis) {
  const bool skip_boundary = basis.domain.bc == BC::dirichlet;
  double m = std::numeric_limits<double>::infinity();
  for (int p = 0; p < basis.grid.size(); ++p) {
    if (skip_boundary && basis.grid.is_boundary(p)) continue;
    m = std::min(m, std::min(g.u[p], g.v[p]));
  }
  return m;
}

PrincipalEigenpair finalize(const EigenBasis& basis, const Eigen::MatrixXd& M,
                            double lambda, Eigen::VectorXd c, double gap,
                            const char* method) {
  const int N = basis.n_modes;
  c /= c.norm();  // quadrature L2 norm of the pair

  GridPair phi = synthesize_pair(c, basis);
  double mean = (phi.u * basis.grid.w).sum();
  if (std::abs(mean) <= tol::sign_mean_tie) mean = (phi.v * basis.grid.w).sum();
  if (mean < 0.0) {
    c = -c;
    phi.u = -phi.u;
    phi.v = -phi.v;
  }

  PrincipalEigenpair out;
  out.lambda_p = lambda;
  out.coeffs = c;
  out.phi = phi;
  out.spectral_gap = gap;
  out.method = method;
  const GridPair res = synthesize_pair(M * c - lambda * c, basis);
  out.residual = std::max(res.u.abs().maxCoeff(), res.v.abs().maxCoeff());
  out.positivity_margin = relevant_min(phi, basis);
  out.nonconstancy_margin = {phi.u.maxCoeff() - phi.u.minCoeff(),
                             phi.v.maxCoeff() - phi.v.minCoeff()};
  (void)N;
  return out;
}

double gap_from_general_spectrum(const Eigen::MatrixXd& M, double lambda) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw numeric_failure("general eigensolve failed while measuring the gap");
  std::vector<double> dist(es.eigenvalues().size());
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
    dist[j] = std::abs(es.eigenvalues()[j] - std::complex<double>(lambda, 0.0));
  std::sort(dist.begin(), dist.end());
  return dist.size() > 1 ? dist[1] : 0.0;
}

}  // namespace

PrincipalEigenpair principal_symmetric(const EigenBasis& basis,
                                       const CooperativeOperator& op) {
  if (!op.symmetric)
    throw invalid_input(
        "principal_symmetric requires symmetric coupling; use the "
        "Krein-Rutman solver for asymmetric systems");
  if (op.n_modes != basis.n_modes)
    throw invalid_input("operator and basis disagree on the mode count");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.M);
  if (es.info() != Eigen::Success)
    throw numeric_failure("symmetric eigensolve failed");
  const double lambda = es.eigenvalues()[0];
  const double gap = es.eigenvalues()[1] - es.eigenvalues()[0];
  return finalize(basis, op.M, lambda, es.eigenvectors().col(0), gap,
                  "symmetric");
}

PrincipalEigenpair principal_krein_rutman(const EigenBasis& basis, Pair2 d,
                                          Pair2 s, const MatrixField& A,
                                          double tol) {
  const CooperativeOperator op = assemble(basis, d, s, A);
  const MatrixFieldValues vals = materialize(A, basis.domain, basis.grid);

  // Gershgorin enclosure of the assembled matrix: every eigenvalue lies in
  // [g_lo, g_hi], so the radius crosses 1 in there.  Power iteration slows
  // down far above lambda_p (the shift beta grows with |lambda|), so rather
  // than bisecting the full enclosure, the upper bracket end is located by a
  // geometric scan upward from the certified lower end; every radius
  // evaluation then stays in the well-conditioned range.
  double g_lo = std::numeric_limits<double>::infinity();
  double g_hi = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < op.M.rows(); ++i) {
    const double radius = op.M.row(i).cwiseAbs().sum() - std::abs(op.M(i, i));
    g_lo = std::min(g_lo, op.M(i, i) - radius);
    g_hi = std::max(g_hi, op.M(i, i) + radius);
  }

  auto radius_at = [&](double lambda) {
    return krein_rutman_radius(basis, d, s, A, lambda,
                               default_beta(lambda, vals))
        .radius;
  };
  double lo = g_lo - 1.0;
  if (!(radius_at(lo) < 1.0))
    throw numeric_failure(
        "principal_krein_rutman: spectral radius does not cross 1 inside the "
        "Gershgorin bracket");
  double step = 0.5 * (1.0 + max_pointwise_norm(vals));
  double hi = lo + step;
  while (radius_at(hi) <= 1.0) {
    lo = hi;
    step *= 2.0;
    hi = lo + step;
    if (hi > g_hi + 1.0)
      throw numeric_failure(
          "principal_krein_rutman: spectral radius does not cross 1 inside "
          "the Gershgorin bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (radius_at(mid) >= 1.0 ? hi : lo) = mid;
  }
  const double lambda = 0.5 * (lo + hi);

  // Fixed direction of the resolvent map at lambda, then one inverse
  // iteration on the assembled matrix to sharpen the residual.
  const KreinRutmanRadius fixed = krein_rutman_radius(
      basis, d, s, A, lambda, default_beta(lambda, vals));
  Eigen::VectorXd c = project_pair(fixed.direction, basis);
  const double shift = lambda - 1e-8 * std::max(1.0, std::abs(lambda));
  Eigen::MatrixXd shifted = op.M;
  shifted.diagonal().array() -= shift;
  c = Eigen::PartialPivLU<Eigen::MatrixXd>(shifted).solve(c);
  if (!c.allFinite())
    throw numeric_failure("inverse-iteration refinement produced non-finite values");

  return finalize(basis, op.M, lambda, c,
                  gap_from_general_spectrum(op.M, lambda), "krein_rutman");
}

PrincipalEigenpair principal_auto(const EigenBasis& basis, Pair2 d, Pair2 s,
                                  const MatrixField& A) {
  const CooperativeOperator op = assemble(basis, d, s, A);
  return op.symmetric ? principal_symmetric(basis, op)
                      : principal_krein_rutman(basis, d, s, A);
}

double rayleigh_quotient(const CooperativeOperator& op,
                         const Eigen::VectorXd& u) {
  if (u.size() != op.M.rows())
    throw invalid_input("rayleigh_quotient: coefficient length mismatch");
  const double nn = u.squaredNorm();
  if (!(nn > 0.0)) throw invalid_input("rayleigh_quotient: zero vector");
  return u.dot(op.M * u) / nn;
}

std::array<double, 2> grad_lambda_d(const EigenBasis& basis, Pair2 d, Pair2 s,
                                    const PrincipalEigenpair& pair) {
  const int N = basis.n_modes;
  if (pair.coeffs.size() != 2 * N)
    throw invalid_input("grad_lambda_d: eigenpair does not match the basis");
  if (pair.residual > tol::stale_residual)
    throw invalid_input("grad_lambda_d: stale eigenpair (residual too large)");
  const double nn = pair.coeffs.squaredNorm();
  // Coefficients at eigensolver roundoff scale are structural zeros; dropping
  // them keeps modes absent from the eigenfunction from contributing, so a
  // constant eigenfunction yields an exact zero derivative.
  const double floor = tol::coeff_roundoff * std::sqrt(nn);
  std::array<double, 2> grad{};
  for (int i = 0; i < 2; ++i) {
    const Eigen::ArrayXd mult = fractional_multipliers(basis, d[i], s[i]);
    const Eigen::ArrayXd ci =
        i == 0 ? pair.coeffs.head(N).array() : pair.coeffs.tail(N).array();
    const Eigen::ArrayXd kept =
        (ci.abs() > floor).select(ci, Eigen::ArrayXd::Zero(N));
    grad[i] = s[i] / d[i] * (mult * kept.square()).sum() / nn;
  }
  return grad;
}

double certify_bound(const EigenBasis& basis, Pair2 d, Pair2 s,
                     const MatrixField& A, const GridPair& phi,
                     BoundDirection direction) {
  if (phi.u.size() != basis.grid.size() || phi.v.size() != basis.grid.size())
    throw invalid_input("certify_bound: test pair not sampled on the basis grid");
  if (!(relevant_min(phi, basis) > 0.0))
    throw invalid_input("certify_bound: test pair must be strictly positive");

  const CooperativeOperator op = assemble(basis, d, s, A);
  const GridPair Kphi = synthesize_pair(op.M * project_pair(phi, basis), basis);

  const bool skip_boundary = basis.domain.bc == BC::dirichlet;
  const bool lower = direction == BoundDirection::lower;
  double best = lower ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  for (int p = 0; p < basis.grid.size(); ++p) {
    if (skip_boundary && basis.grid.is_boundary(p)) continue;
    const double r1 = Kphi.u[p] / phi.u[p];
    const double r2 = Kphi.v[p] / phi.v[p];
    best = lower ? std::min({best, r1, r2}) : std::max({best, r1, r2});
  }
  return best;
}

namespace {

// Strictly positive, band-limited right-hand-side component for the
// order-preservation trials.  Neumann admits constants; Dirichlet masks a
// low-frequency cosine mixture by the first sine mode(s).
Eigen::ArrayXd random_positive_component(const EigenBasis& basis,
                                         std::mt19937_64& rng) {
  const Grid& g = basis.grid;
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  constexpr double kPi = 3.14159265358979323846;
  const double lx = basis.domain.lx;

  auto mixture = [&](const Eigen::ArrayXd& t, double length) {
    Eigen::ArrayXd m = Eigen::ArrayXd::Zero(t.size());
    for (int k = 1; k <= 4; ++k) m += U(rng) * (k * kPi / length * t).cos();
    const double peak = m.abs().maxCoeff();
    if (peak > 0.0) m *= 0.3 / peak;
    return m;
  };

  if (basis.domain.bc == BC::neumann) {
    Eigen::ArrayXd f = 1.0 + mixture(g.x, lx);
    if (basis.domain.dim() == 2) f *= 1.0 + mixture(g.y, basis.domain.ly);
    return f;
  }
  Eigen::ArrayXd f = (kPi / lx * g.x).sin() * (1.0 + mixture(g.x, lx));
  if (basis.domain.dim() == 2)
    f *= (kPi / basis.domain.ly * g.y).sin() *
         (1.0 + mixture(g.y, basis.domain.ly));
  return f;
}

}  // namespace

MaxPrincipleReport check_weak_max_principle(const EigenBasis& basis, Pair2 d,
                                            Pair2 s, const MatrixField& A,
                                            int trials,
                                            unsigned long long seed) {
  if (trials < 1) throw invalid_input("check_weak_max_principle: trials must be >= 1");
  const CooperativeOperator op = assemble(basis, d, s, A);
  if (!op.symmetric)
    throw invalid_input("check_weak_max_principle requires symmetric coupling");
  const PrincipalEigenpair eig = principal_symmetric(basis, op);

  MaxPrincipleReport rep;
  rep.lambda_p = eig.lambda_p;
  if (std::abs(eig.lambda_p) <= tol::lambda_borderline) {
    rep.borderline = true;
    return rep;
  }

  if (eig.lambda_p < 0.0) {
    // u = -phi_1 satisfies K u = -lambda_p phi_1 >= 0 yet u < 0 everywhere.
    rep.counterexample = true;
    GridPair rhs{-eig.lambda_p * eig.phi.u, -eig.lambda_p * eig.phi.v};
    GridPair sol{-eig.phi.u, -eig.phi.v};
    rep.counterexample_rhs_min = relevant_min(rhs, basis);
    rep.counterexample_sol_min = relevant_min(sol, basis);
    return rep;
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.M);
  std::mt19937_64 rng(seed);
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    GridPair f{random_positive_component(basis, rng),
               random_positive_component(basis, rng)};
    const Eigen::VectorXd c = lu.solve(project_pair(f, basis));
    if (!c.allFinite())
      throw numeric_failure("order-preservation solve produced non-finite values");
    worst = std::min(worst, relevant_min(synthesize_pair(c, basis), basis));
  }
  rep.trials = trials;
  rep.min_solution_value = worst;
  rep.holds = worst >= -tol::maxprin_negativity;
  return rep;
}

}  // namespace fraccoop
