#include "fraccoop/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fraccoop/tolerances.hpp"

namespace fraccoop {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_values(const std::vector<double>& v) {
  if (v.size() < 4)
    throw invalid_input("sweep needs at least 4 parameter values");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw invalid_input("sweep values must be positive");
    if (i > 0 && !(v[i] > v[i - 1]))
      throw invalid_input("sweep values must be strictly increasing");
  }
}

// Limits are approached at one end of the sorted value list; row flags are
// computed walking toward that end.
bool limit_at_smallest(const SweepPlan& plan) {
  switch (plan.target) {
    case SweepTarget::min_principal:
    case SweepTarget::limit_s0_operator:
      return true;
    case SweepTarget::perron_of_average:
    case SweepTarget::classical_laplacian:
    case SweepTarget::perron_constant:
      return false;
    case SweepTarget::divergence:
      // d -> inf for diffusion sweeps, l -> 0 for domain scaling.
      return plan.parameter == SweepParameter::domain_scale;
  }
  return false;
}

void fill_monotone_flags(SweepResult& out, const SweepPlan& plan) {
  const int n = static_cast<int>(out.rows.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i)
    order[i] = limit_at_smallest(plan) ? n - 1 - i : i;
  for (int k = 0; k < n; ++k) out.rows[order[k]].monotone_ok = true;
  for (int k = 1; k < n; ++k) {
    const SweepRow& prev = out.rows[order[k - 1]];
    SweepRow& cur = out.rows[order[k]];
    if (plan.target == SweepTarget::divergence)
      cur.monotone_ok = cur.lambda_p >= prev.lambda_p - tol::chain_slack;
    else
      cur.monotone_ok = cur.gap <= prev.gap + tol::chain_slack;
  }
}

double constant_matrix_or_throw(const MatrixFieldValues& vals,
                                Eigen::Matrix2d& C) {
  const Eigen::ArrayXd* entries[4] = {&vals.a11, &vals.a12, &vals.a21,
                                      &vals.a22};
  double spread = 0.0;
  for (const auto* e : entries)
    spread = std::max(spread, e->maxCoeff() - e->minCoeff());
  C << vals.a11[0], vals.a12[0], vals.a21[0], vals.a22[0];
  return spread;
}

}  // namespace

SweepResult sweep_diffusion(const SweepPlan& plan) {
  if (plan.parameter != SweepParameter::d_joint &&
      plan.parameter != SweepParameter::d1 &&
      plan.parameter != SweepParameter::d2)
    throw invalid_input("sweep_diffusion requires a diffusion parameter");
  require_values(plan.values);
  if (plan.values.front() < 1e-6 * (1.0 - 1e-12))
    throw invalid_input("diffusion values below the 1e-6 floor are not supported");

  const bool to_zero = plan.target == SweepTarget::min_principal;
  if (plan.target == SweepTarget::divergence) {
    if (plan.domain.bc != BC::dirichlet)
      throw invalid_input("the divergence target applies to Dirichlet conditions");
  } else if (plan.target == SweepTarget::min_principal ||
             plan.target == SweepTarget::perron_of_average) {
    if (plan.domain.bc != BC::neumann)
      throw invalid_input("diffusion limits are stated for Neumann conditions");
  } else {
    throw invalid_input("unsupported target for a diffusion sweep");
  }

  const EigenBasis base = build_basis(plan.domain, plan.n_modes, plan.resolution);
  // Small diffusion pushes spectral mass to high modes: refine the two
  // smallest values.
  EigenBasis fine;
  const bool refine = to_zero && plan.small_d_modes > plan.n_modes;
  if (refine) fine = build_basis(plan.domain, plan.small_d_modes, 0);

  SweepResult out;
  out.keep_profiles = true;
  if (plan.target == SweepTarget::divergence) {
    out.target_value = kInf;
  } else if (to_zero) {
    out.target_value =
        min_principal_over_domain(plan.A, plan.domain,
                                  (refine ? fine : base).grid)
            .value;
  } else {
    out.target_value =
        perron_2x2(matrix_average(plan.A, plan.domain, base.grid)).lambda_bar;
  }

  // Certified divergence floor: for every mode, Weyl's inequality gives
  // lambda >= min_i d_i^{s_i} mu_1^{s_i} - max_x |A(x)|_2.
  double shift_h = 0.0;
  if (plan.target == SweepTarget::divergence)
    shift_h = max_pointwise_norm(materialize(plan.A, plan.domain, base.grid));

  for (std::size_t i = 0; i < plan.values.size(); ++i) {
    const double v = plan.values[i];
    Pair2 d = plan.d;
    if (plan.parameter == SweepParameter::d_joint) d = {v, v};
    if (plan.parameter == SweepParameter::d1) d[0] = v;
    if (plan.parameter == SweepParameter::d2) d[1] = v;

    const EigenBasis& basis = (refine && i < 2) ? fine : base;
    const PrincipalEigenpair eig = principal_auto(basis, d, plan.s, plan.A);

    SweepRow row;
    row.param = v;
    row.lambda_p = eig.lambda_p;
    row.target = out.target_value;
    row.gap = std::isinf(out.target_value) ? kInf
                                           : std::abs(eig.lambda_p - out.target_value);
    out.rows.push_back(row);
    out.profiles.push_back(eig.phi);

    if (plan.target == SweepTarget::divergence) {
      const double mu1 = basis.modes[0].mu;
      const double bound = std::min(std::pow(d[0], plan.s[0]) * std::pow(mu1, plan.s[0]),
                                    std::pow(d[1], plan.s[1]) * std::pow(mu1, plan.s[1])) -
                           shift_h;
      out.lower_bounds.push_back(bound);
      if (eig.lambda_p < bound - tol::bound_slack)
        throw numeric_failure("certified Dirichlet divergence bound violated");
    }
  }
  fill_monotone_flags(out, plan);
  return out;
}

SweepResult sweep_order(const SweepPlan& plan) {
  if (plan.parameter != SweepParameter::s_joint)
    throw invalid_input("sweep_order requires the joint-order parameter");
  if (plan.domain.bc != BC::neumann)
    throw invalid_input("order limits are stated for Neumann conditions");
  require_values(plan.values);
  if (plan.values.back() >= 1.0)
    throw invalid_input("order sweep values must lie strictly inside (0, 1)");

  const EigenBasis basis = build_basis(plan.domain, plan.n_modes, plan.resolution);

  SweepResult out;
  out.keep_profiles = true;
  if (plan.target == SweepTarget::classical_laplacian) {
    out.target_value = principal_auto(basis, plan.d, {1.0, 1.0}, plan.A).lambda_p;
  } else if (plan.target == SweepTarget::limit_s0_operator) {
    // The small-order limit multiplier is 1 wherever d_i * mu_k > 0 and 0 on
    // the constant mode, so the target is the same along any positive
    // diffusion path; evaluate at d and 10 d and insist they agree.
    auto target_at = [&](Pair2 d) {
      for (double di : d)
        if (!(di > 0.0))
          throw invalid_input("diffusion must stay positive along the limit path");
      const CooperativeOperator op = limit_s0_assemble(basis, plan.A);
      if (op.symmetric) return principal_symmetric(basis, op).lambda_p;
      const Eigen::EigenSolver<Eigen::MatrixXd> es(op.M);
      double best = kInf;
      for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
        best = std::min(best, es.eigenvalues()[j].real());
      return best;
    };
    const double t1 = target_at(plan.d);
    const double t2 = target_at({10.0 * plan.d[0], 10.0 * plan.d[1]});
    if (std::abs(t1 - t2) > tol::s0_target_agreement)
      throw numeric_failure("small-order target depends on the diffusion path");
    out.target_value = t1;
  } else {
    throw invalid_input("unsupported target for an order sweep");
  }

  for (double v : plan.values) {
    const PrincipalEigenpair eig = principal_auto(basis, plan.d, {v, v}, plan.A);
    SweepRow row;
    row.param = v;
    row.lambda_p = eig.lambda_p;
    row.target = out.target_value;
    row.gap = std::abs(eig.lambda_p - out.target_value);
    out.rows.push_back(row);
    out.profiles.push_back(eig.phi);
  }
  fill_monotone_flags(out, plan);
  return out;
}

SweepResult sweep_domain_scale(const SweepPlan& plan) {
  if (plan.parameter != SweepParameter::domain_scale)
    throw invalid_input("sweep_domain_scale requires the domain-scale parameter");
  if (plan.domain.bc != BC::dirichlet)
    throw invalid_input("domain scaling is stated for Dirichlet conditions");
  if (plan.target != SweepTarget::perron_constant &&
      plan.target != SweepTarget::divergence)
    throw invalid_input("unsupported target for a domain-scale sweep");
  require_values(plan.values);

  const EigenBasis base = build_basis(plan.domain, plan.n_modes, plan.resolution);
  Eigen::Matrix2d C;
  if (constant_matrix_or_throw(materialize(plan.A, plan.domain, base.grid), C) >
      1e-14)
    throw invalid_input("domain scaling requires constant coupling");
  if (std::abs(C(0, 1) - C(1, 0)) > 1e-14)
    throw invalid_input("domain scaling requires symmetric coupling");
  const double lambda_bar = perron_2x2(C).lambda_bar;
  const double mu1_base = base.modes[0].mu;

  SweepResult out;
  out.keep_profiles = true;
  out.target_value =
      plan.target == SweepTarget::divergence ? kInf : lambda_bar;

  for (double l : plan.values) {
    const Domain scaled = scale_domain(plan.domain, l);
    const EigenBasis basis = build_basis(scaled, plan.n_modes, plan.resolution);
    const PrincipalEigenpair eig = principal_auto(basis, plan.d, plan.s, plan.A);

    SweepRow row;
    row.param = l;
    row.lambda_p = eig.lambda_p;
    row.target = out.target_value;
    row.gap = std::isinf(out.target_value)
                  ? kInf
                  : std::abs(eig.lambda_p - out.target_value);
    out.rows.push_back(row);
    out.profiles.push_back(eig.phi);

    // Weyl floor on every mode of the scaled domain: mu_1(l Omega) =
    // mu_1(Omega) / l^2.
    const double bound =
        std::min(std::pow(plan.d[0], plan.s[0]) *
                     std::pow(mu1_base / (l * l), plan.s[0]),
                 std::pow(plan.d[1], plan.s[1]) *
                     std::pow(mu1_base / (l * l), plan.s[1])) +
        lambda_bar;
    out.lower_bounds.push_back(bound);
    if (eig.lambda_p < bound - tol::bound_slack)
      throw numeric_failure("certified domain-scaling lower bound violated");
  }
  fill_monotone_flags(out, plan);
  return out;
}

ShapeReport check_shape_properties(const Domain& domain, int n_modes,
                                   const MatrixField& A, Pair2 s,
                                   const std::vector<double>& d_values) {
  if (d_values.size() < 2)
    throw invalid_input("shape check needs at least 2 diffusion values");
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    if (!(d_values[i] > 0.0))
      throw invalid_input("shape check needs positive diffusion values");
    if (i > 0 && !(d_values[i] > d_values[i - 1]))
      throw invalid_input("shape check values must be strictly increasing");
  }
  const EigenBasis basis = build_basis(domain, n_modes, 0);
  if (!materialize(A, domain, basis.grid).symmetric)
    throw invalid_input("shape check requires symmetric coupling");

  const int n = static_cast<int>(d_values.size());
  ShapeReport rep;
  rep.d_values = d_values;
  rep.lambda.assign(n, std::vector<double>(n, 0.0));

  std::map<std::pair<double, double>, double> cache;
  std::vector<std::vector<double>> margin(n, std::vector<double>(n, 0.0));
  auto value_at = [&](double d1, double d2) {
    const auto key = std::make_pair(d1, d2);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double lam =
        principal_symmetric(basis, assemble(basis, {d1, d2}, s, A)).lambda_p;
    cache.emplace(key, lam);
    return lam;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const PrincipalEigenpair eig = principal_symmetric(
          basis, assemble(basis, {d_values[i], d_values[j]}, s, A));
      rep.lambda[i][j] = eig.lambda_p;
      margin[i][j] =
          std::max(eig.nonconstancy_margin[0], eig.nonconstancy_margin[1]);
      cache.emplace(std::make_pair(d_values[i], d_values[j]), eig.lambda_p);
    }

  auto note_monotone = [&](double lo, double hi, double margin_lo) {
    rep.worst_monotone_violation =
        std::max(rep.worst_monotone_violation, lo - hi);
    if (hi < lo - tol::shape_slack) rep.monotone = false;
    if (margin_lo > tol::strict_nonconstancy) {
      rep.strictness_required = true;
      if (!(hi > lo)) rep.strict = false;
    }
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      note_monotone(rep.lambda[i][j], rep.lambda[i][j + 1], margin[i][j]);
      note_monotone(rep.lambda[j][i], rep.lambda[j + 1][i], margin[j][i]);
    }

  // Midpoint concavity along rows, columns, and index diagonals; midpoints
  // are fresh evaluations since the grid need not be equally spaced.
  auto note_concave = [&](double a1, double a2, double b1, double b2) {
    const double mid = value_at(0.5 * (a1 + b1), 0.5 * (a2 + b2));
    const double chord = 0.5 * (value_at(a1, a2) + value_at(b1, b2));
    rep.worst_concavity_violation =
        std::max(rep.worst_concavity_violation, chord - mid);
    if (mid < chord - tol::shape_slack) rep.concave = false;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int t = 1; t < n; ++t) {
        if (j + t < n) {
          note_concave(d_values[i], d_values[j], d_values[i], d_values[j + t]);
          note_concave(d_values[j], d_values[i], d_values[j + t], d_values[i]);
        }
        if (i + t < n && j + t < n)
          note_concave(d_values[i], d_values[j], d_values[i + t],
                       d_values[j + t]);
      }
  return rep;
}

DomainMonotonicityReport check_domain_monotonicity(const MatrixField& A, Pair2 d,
                                                   Pair2 s, double inner_length,
                                                   double outer_length,
                                                   int n_modes) {
  if (!(inner_length > 0.0) || !(outer_length >= inner_length))
    throw invalid_input("domain monotonicity needs nested intervals");
  const EigenBasis outer_d =
      build_basis(make_interval(outer_length, BC::dirichlet), n_modes, 0);
  Eigen::Matrix2d C;
  if (constant_matrix_or_throw(materialize(A, outer_d.domain, outer_d.grid), C) >
      1e-14)
    throw invalid_input("domain monotonicity requires constant coupling");
  const EigenBasis inner_d =
      build_basis(make_interval(inner_length, BC::dirichlet), n_modes, 0);
  const EigenBasis outer_n =
      build_basis(make_interval(outer_length, BC::neumann), n_modes, 0);

  DomainMonotonicityReport rep;
  rep.lambda_dirichlet_inner = principal_auto(inner_d, d, s, A).lambda_p;
  rep.lambda_dirichlet_outer = principal_auto(outer_d, d, s, A).lambda_p;
  rep.lambda_neumann_outer = principal_auto(outer_n, d, s, A).lambda_p;
  rep.chain_ok =
      rep.lambda_dirichlet_inner >= rep.lambda_dirichlet_outer - tol::chain_slack &&
      rep.lambda_dirichlet_outer >= rep.lambda_neumann_outer - tol::chain_slack;
  return rep;
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::d_joint: return "d_joint";
    case SweepParameter::d1: return "d1";
    case SweepParameter::d2: return "d2";
    case SweepParameter::s_joint: return "s_joint";
    case SweepParameter::domain_scale: return "domain_scale";
  }
  return "unknown";
}

std::string to_string(SweepTarget t) {
  switch (t) {
    case SweepTarget::min_principal: return "min_principal";
    case SweepTarget::perron_of_average: return "perron_of_average";
    case SweepTarget::classical_laplacian: return "classical_laplacian";
    case SweepTarget::limit_s0_operator: return "limit_s0_operator";
    case SweepTarget::perron_constant: return "perron_constant";
    case SweepTarget::divergence: return "divergence";
  }
  return "unknown";
}

}  // namespace fraccoop
