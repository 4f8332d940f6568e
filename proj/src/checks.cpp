#include "fraccoop/checks.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include "fraccoop/asymptotics.hpp"
#include "fraccoop/epidemic.hpp"
#include "fraccoop/reference.hpp"
#include "fraccoop/tolerances.hpp"

namespace fraccoop::checks {
namespace {

constexpr Pair2 kD{1.0, 1.0};
constexpr Pair2 kS{0.5, 0.5};

// Accumulates named sub-assertions into one pass/fail + detail string.
struct Tally {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    if (!ok) detail += "FAIL ";
    detail += what;
  }
};

Eigen::Matrix2d constant_A0() {
  Eigen::Matrix2d m;
  m << 2.0, -1.0, -1.0, 2.0;
  return m;
}

// Coupling with an x-dependent diagonal: bottom eigenvalue 1 + cos(x),
// touching 0 at the right endpoint; its average matrix has bottom eigenvalue 1.
MatrixField nonconstant_A() {
  MatrixField A;
  A.a11 = cosine_field(2.0, 1, 1.0);
  A.a22 = cosine_field(2.0, 1, 1.0);
  A.a12 = constant_field(-1.0);
  A.a21 = constant_field(-1.0);
  return A;
}

// Endemic model with reproduction number 2: a = b = 1, H'(0) = 2, G'(0) = 1.
EpidemicModel supercritical_model() {
  EpidemicModel m;
  m.a = constant_field(1.0);
  m.b = constant_field(1.0);
  m.H = make_nonlinearity("log_saturating", 2.0);
  m.G = make_nonlinearity("michaelis_menten", 1.0, 1.0);
  m.d = kD;
  m.s = kS;
  return m;
}

// Endemic model with reproduction number 1/4: a = b = 2, H'(0) = G'(0) = 1.
EpidemicModel subcritical_model() {
  EpidemicModel m;
  m.a = constant_field(2.0);
  m.b = constant_field(2.0);
  m.H = make_nonlinearity("log_saturating", 1.0);
  m.G = make_nonlinearity("michaelis_menten", 1.0, 1.0);
  m.d = kD;
  m.s = kS;
  return m;
}

double sup_abs(const Eigen::ArrayXd& a) { return a.abs().maxCoeff(); }

// ---------------------------------------------------------------- check 1

CheckResult check_constant_oracle(unsigned long long) {
  Tally t;
  const Eigen::Matrix2d C = constant_A0();
  const MatrixField A = constant_matrix(C);
  for (BC bc : {BC::neumann, BC::dirichlet}) {
    const Domain dom = make_interval(M_PI, bc);
    const EigenBasis basis = build_basis(dom, 64);
    const PrincipalEigenpair pair =
        principal_symmetric(basis, assemble(basis, kD, kS, A));
    const double oracle = ref::constant_lambda_p(dom, 64, kD, kS, C);
    const double pinned = bc == BC::neumann ? 1.0 : 2.0;
    const char* tag = bc == BC::neumann ? "neumann" : "dirichlet";
    t.require(std::abs(pair.lambda_p - oracle) <= tol::eigen_oracle,
              fmt::format("{} vs per-mode oracle err={:.2e}", tag,
                          std::abs(pair.lambda_p - oracle)));
    t.require(std::abs(pair.lambda_p - pinned) <= tol::eigen_oracle,
              fmt::format("{} lambda_p={:.12g} (pinned {:g})", tag,
                          pair.lambda_p, pinned));
    t.require(pair.residual <= tol::residual_max,
              fmt::format("{} residual={:.2e}", tag, pair.residual));
  }
  return {1, "constant-oracle", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 2

CheckResult check_cross_validation(unsigned long long seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);

  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Domain dom =
        make_interval(M_PI, i % 2 ? BC::dirichlet : BC::neumann);
    MatrixField A;
    const double off0 = -(0.7 + 1.3 * U(rng));
    const double off_amp = 0.5 * std::abs(off0) * (2.0 * U(rng) - 1.0);
    A.a12 = cosine_field(off0, 1 + i % 3, off_amp);
    A.a21 = A.a12;
    A.a11 = cosine_field(0.5 + 2.0 * U(rng), 1, 0.8 * (2.0 * U(rng) - 1.0));
    A.a22 = cosine_field(0.5 + 2.0 * U(rng), 2, 0.8 * (2.0 * U(rng) - 1.0));
    const Pair2 d{0.5 + U(rng), 0.5 + U(rng)};
    const Pair2 s{0.35 + 0.6 * U(rng), 0.35 + 0.6 * U(rng)};
    const EigenBasis basis = build_basis(dom, 32);
    const double sym =
        principal_symmetric(basis, assemble(basis, d, s, A)).lambda_p;
    const double kr = principal_krein_rutman(basis, d, s, A).lambda_p;
    worst = std::max(worst, std::abs(sym - kr));
  }
  t.require(worst <= tol::cross_algorithm,
            fmt::format("dense vs bisection on 10 instances, worst gap={:.2e}",
                        worst));

  // Unit radius at lambda_p for two admissible shifts, plus the sign cases.
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 64);
  const MatrixField A = constant_matrix(constant_A0());
  const MatrixFieldValues vals = materialize(A, dom, basis.grid);
  const double lp =
      principal_symmetric(basis, assemble(basis, kD, kS, A)).lambda_p;
  for (double factor : {1.0, 3.0}) {
    const double beta = factor * default_beta(lp, vals);
    const double r = krein_rutman_radius(basis, kD, kS, A, lp, beta).radius;
    t.require(std::abs(r - 1.0) <= tol::kr_radius_unit,
              fmt::format("radius at lambda_p (beta x{:g}) = 1{:+.2e}", factor,
                          r - 1.0));
  }
  const double lo = lp - 0.5, hi = lp + 0.5;
  const double r_lo =
      krein_rutman_radius(basis, kD, kS, A, lo, default_beta(lo, vals)).radius;
  const double r_hi =
      krein_rutman_radius(basis, kD, kS, A, hi, default_beta(hi, vals)).radius;
  t.require(r_lo < 1.0, fmt::format("radius below lambda_p = {:.6f} < 1", r_lo));
  t.require(r_hi > 1.0, fmt::format("radius above lambda_p = {:.6f} > 1", r_hi));
  return {2, "cross-validation", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 3

CheckResult check_variational_bound(unsigned long long seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);

  struct Instance {
    const char* tag;
    Domain dom;
    MatrixField A;
  };
  const Instance instances[] = {
      {"neumann-const", make_interval(M_PI, BC::neumann),
       constant_matrix(constant_A0())},
      {"dirichlet-const", make_interval(M_PI, BC::dirichlet),
       constant_matrix(constant_A0())},
      {"neumann-varying", make_interval(M_PI, BC::neumann), nonconstant_A()},
  };
  for (const Instance& inst : instances) {
    const EigenBasis basis = build_basis(inst.dom, 64);
    const CooperativeOperator op = assemble(basis, kD, kS, inst.A);
    const double lp = principal_symmetric(basis, op).lambda_p;
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXd u(2 * basis.n_modes);
      for (int k = 0; k < u.size(); ++k) u[k] = N01(rng);
      u.normalize();
      worst = std::min(worst, rayleigh_quotient(op, u) - lp);
    }
    t.require(worst >= -tol::rayleigh_slack,
              fmt::format("{}: min Rayleigh slack {:+.2e} over 1000 draws",
                          inst.tag, worst));
  }
  return {3, "variational-bound", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 4

CheckResult check_diffusion_gradient(unsigned long long) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 64);
  const MatrixField A = nonconstant_A();

  const auto lam = [&](Pair2 d) {
    return principal_symmetric(basis, assemble(basis, d, kS, A)).lambda_p;
  };
  const PrincipalEigenpair pair =
      principal_symmetric(basis, assemble(basis, kD, kS, A));
  const std::array<double, 2> grad = grad_lambda_d(basis, kD, kS, pair);
  t.require(grad[0] >= 0.0 && grad[1] >= 0.0,
            fmt::format("gradient nonnegative: ({:.6g}, {:.6g})", grad[0],
                        grad[1]));
  const double h = tol::grad_fd_step;
  for (int i = 0; i < 2; ++i) {
    Pair2 dp = kD, dm = kD;
    dp[i] += h;
    dm[i] -= h;
    const double fd = (lam(dp) - lam(dm)) / (2.0 * h);
    const double rel = std::abs(grad[i] - fd) / std::max(std::abs(fd), 1e-12);
    t.require(rel <= tol::grad_rel,
              fmt::format("component {} analytic vs central diff rel={:.2e}",
                          i + 1, rel));
  }

  const MatrixField A0 = constant_matrix(constant_A0());
  const PrincipalEigenpair flat =
      principal_symmetric(basis, assemble(basis, kD, kS, A0));
  const std::array<double, 2> g0 = grad_lambda_d(basis, kD, kS, flat);
  t.require(g0[0] == 0.0 && g0[1] == 0.0,
            fmt::format("constant coupling gradient exactly zero: ({:g}, {:g})",
                        g0[0], g0[1]));
  return {4, "diffusion-gradient", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 5

CheckResult check_shape_grid(unsigned long long) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const std::vector<double> d_values{0.25, 0.5, 1.0, 2.0, 4.0};
  const ShapeReport rep =
      check_shape_properties(dom, 48, nonconstant_A(), kS, d_values);
  t.require(rep.monotone,
            fmt::format("monotone on 5x5 grid, worst violation {:.2e}",
                        rep.worst_monotone_violation));
  t.require(rep.concave,
            fmt::format("midpoint concave, worst violation {:.2e}",
                        rep.worst_concavity_violation));
  t.require(rep.strictness_required,
            "eigenfunction nonconstancy exceeds the strictness threshold");
  t.require(rep.strict, "increase is strict where required");
  return {5, "shape-grid", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 6

CheckResult check_diffusion_limits(unsigned long long) {
  Tally t;

  SweepPlan to_zero;
  to_zero.domain = make_interval(M_PI, BC::neumann);
  to_zero.n_modes = 64;
  to_zero.A = nonconstant_A();
  to_zero.parameter = SweepParameter::d_joint;
  to_zero.values = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
  to_zero.target = SweepTarget::min_principal;
  to_zero.small_d_modes = 256;
  const SweepResult rz = sweep_diffusion(to_zero);
  t.require(rz.rows[0].monotone_ok && rz.rows[1].monotone_ok,
            fmt::format("vanishing diffusion gap monotone over last 3 points "
                        "({:.2e}, {:.2e}, {:.2e})",
                        rz.rows[2].gap, rz.rows[1].gap, rz.rows[0].gap));
  t.require(rz.rows[0].gap <= tol::d_to_zero_gap,
            fmt::format("gap to min-over-domain limit {:.2e} at d=1e-6",
                        rz.rows[0].gap));

  SweepPlan to_inf = to_zero;
  to_inf.values = {1e3, 1e4, 1e5, 1e6};
  to_inf.target = SweepTarget::perron_of_average;
  to_inf.small_d_modes = 0;
  const SweepResult ri = sweep_diffusion(to_inf);
  t.require(std::abs(ri.target_value - 1.0) <= 1e-10,
            fmt::format("averaged-matrix limit = {:.12g}", ri.target_value));
  t.require(ri.rows.back().gap <= tol::d_to_inf_gap,
            fmt::format("gap to averaged-matrix limit {:.2e} at d=1e6",
                        ri.rows.back().gap));

  SweepPlan diverge = to_inf;
  diverge.domain = make_interval(M_PI, BC::dirichlet);
  diverge.target = SweepTarget::divergence;
  const SweepResult rd = sweep_diffusion(diverge);
  bool grows = true, bounded_below = true;
  for (std::size_t i = 0; i < rd.rows.size(); ++i) {
    grows = grows && rd.rows[i].monotone_ok;
    bounded_below = bounded_below &&
                    rd.rows[i].lambda_p >= rd.lower_bounds[i] - tol::bound_slack;
  }
  t.require(grows, fmt::format("Dirichlet branch nondecreasing, final "
                               "lambda_p={:.6g}",
                               rd.rows.back().lambda_p));
  t.require(bounded_below && rd.lower_bounds.back() > 900.0,
            fmt::format("certified floor {:.6g} respected at every d",
                        rd.lower_bounds.back()));
  return {6, "diffusion-limits", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 7

CheckResult check_order_limits(unsigned long long) {
  Tally t;

  SweepPlan to_one;
  to_one.domain = make_interval(M_PI, BC::neumann);
  to_one.n_modes = 64;
  to_one.A = nonconstant_A();
  to_one.parameter = SweepParameter::s_joint;
  to_one.values = {0.5, 0.9, 0.99, 0.999};
  to_one.target = SweepTarget::classical_laplacian;
  const SweepResult r1 = sweep_order(to_one);
  t.require(r1.rows[2].monotone_ok && r1.rows[3].monotone_ok,
            fmt::format("gap to the classical assembly decreasing "
                        "({:.2e}, {:.2e}, {:.2e})",
                        r1.rows[1].gap, r1.rows[2].gap, r1.rows[3].gap));
  t.require(r1.rows[3].gap <= tol::s_to_one_gap,
            fmt::format("gap {:.2e} at s=0.999", r1.rows[3].gap));

  SweepPlan to_zero = to_one;
  to_zero.values = {0.001, 0.01, 0.1, 0.5};
  to_zero.target = SweepTarget::limit_s0_operator;
  const SweepResult r0 = sweep_order(to_zero);
  t.require(r0.rows[0].monotone_ok && r0.rows[1].monotone_ok,
            fmt::format("gap to the vanishing-order operator decreasing "
                        "({:.2e}, {:.2e}, {:.2e})",
                        r0.rows[2].gap, r0.rows[1].gap, r0.rows[0].gap));
  return {7, "order-limits", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 8

CheckResult check_domain_scaling(unsigned long long) {
  Tally t;

  SweepPlan plan;
  plan.domain = make_interval(M_PI, BC::dirichlet);
  plan.n_modes = 64;
  plan.A = constant_matrix(constant_A0());
  plan.parameter = SweepParameter::domain_scale;
  plan.values = {0.1, 0.5, 1.0, 2.0, 10.0};
  plan.target = SweepTarget::perron_constant;
  const SweepResult res = sweep_domain_scale(plan);

  double worst_identity = 0.0;
  bool bounded = true;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const double l = res.rows[i].param;
    worst_identity =
        std::max(worst_identity, std::abs(res.rows[i].lambda_p - (1.0 + 1.0 / l)));
    bounded = bounded &&
              res.rows[i].lambda_p >= res.lower_bounds[i] - tol::bound_slack;
  }
  t.require(worst_identity <= tol::domain_scaling,
            fmt::format("lambda_p(l Omega) = 1 + 1/l, worst err={:.2e}",
                        worst_identity));
  t.require(bounded, "certified scaling floor holds at every l");

  const EigenBasis unit = build_basis(plan.domain, 64);
  double worst_mu = 0.0;
  for (double l : {0.5, 2.0, 10.0}) {
    const EigenBasis scaled = build_basis(scale_domain(plan.domain, l), 64);
    for (int k = 0; k < 64; ++k) {
      const double rel =
          std::abs(scaled.modes[k].mu * l * l - unit.modes[k].mu) /
          unit.modes[k].mu;
      worst_mu = std::max(worst_mu, rel);
    }
  }
  t.require(worst_mu <= tol::mu_scaling_rel,
            fmt::format("Laplacian eigenvalue scaling worst rel err={:.2e}",
                        worst_mu));
  return {8, "domain-scaling", t.pass, t.detail};
}

// ---------------------------------------------------------------- check 9

CheckResult check_domain_monotonicity_chain(unsigned long long) {
  Tally t;
  const DomainMonotonicityReport rep = check_domain_monotonicity(
      constant_matrix(constant_A0()), kD, kS, M_PI / 2.0, M_PI, 64);
  t.require(std::abs(rep.lambda_dirichlet_inner - 3.0) <= tol::domain_mono,
            fmt::format("inner Dirichlet lambda_p={:.12g} (pinned 3)",
                        rep.lambda_dirichlet_inner));
  t.require(std::abs(rep.lambda_dirichlet_outer - 2.0) <= tol::domain_mono,
            fmt::format("outer Dirichlet lambda_p={:.12g} (pinned 2)",
                        rep.lambda_dirichlet_outer));
  t.require(std::abs(rep.lambda_neumann_outer - 1.0) <= tol::domain_mono,
            fmt::format("outer Neumann lambda_p={:.12g} (pinned 1)",
                        rep.lambda_neumann_outer));
  t.require(rep.chain_ok, "inclusion chain ordered");
  return {9, "domain-monotonicity", t.pass, t.detail};
}

// --------------------------------------------------------------- check 10

CheckResult check_max_principle(unsigned long long seed) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 48);

  Eigen::Matrix2d Cp;
  Cp << 1.5, -1.0, -1.0, 1.5;
  const MaxPrincipleReport pos =
      check_weak_max_principle(basis, kD, kS, constant_matrix(Cp), 20, seed);
  t.require(std::abs(pos.lambda_p - 0.5) <= tol::eigen_oracle,
            fmt::format("positive instance lambda_p={:.12g} (pinned 0.5)",
                        pos.lambda_p));
  t.require(pos.holds && pos.trials == 20,
            fmt::format("order preserved on {} random nonnegative sources",
                        pos.trials));
  t.require(pos.min_solution_value >= -tol::maxprin_negativity,
            fmt::format("most negative solution value {:+.2e}",
                        pos.min_solution_value));

  Eigen::Matrix2d Cm;
  Cm << 0.5, -1.0, -1.0, 0.5;
  const MaxPrincipleReport neg =
      check_weak_max_principle(basis, kD, kS, constant_matrix(Cm), 20, seed);
  t.require(std::abs(neg.lambda_p + 0.5) <= tol::eigen_oracle,
            fmt::format("negative instance lambda_p={:.12g} (pinned -0.5)",
                        neg.lambda_p));
  t.require(neg.counterexample &&
                neg.counterexample_rhs_min >= -tol::maxprin_negativity &&
                neg.counterexample_sol_min < 0.0,
            fmt::format("counterexample: source min {:+.2e}, solution min "
                        "{:+.2e}",
                        neg.counterexample_rhs_min, neg.counterexample_sol_min));
  return {10, "max-principle", t.pass, t.detail};
}

// --------------------------------------------------------------- check 11

CheckResult check_reproduction_number(unsigned long long seed) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 32);

  const EpidemicModel preset = supercritical_model();
  const double r0 = compute_R0(preset, basis);
  t.require(std::abs(r0 - 2.0) <= tol::r0_oracle,
            fmt::format("preset R0={:.12g} (oracle H'(0)G'(0)/(ab) = 2)", r0));

  const R0FixedPointReport fp = r0_fixed_point_check(preset, basis, r0);
  t.require(fp.residual <= tol::r0_fixed_point,
            fmt::format("|spectral bound at R0|={:.2e}", fp.residual));
  t.require(fp.bracketed && fp.s_below > 0.0 && fp.s_above < 0.0,
            fmt::format("sign change bracketed: s(0.9 R0)={:+.3e}, "
                        "s(1.1 R0)={:+.3e}",
                        fp.s_below, fp.s_above));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int accepted = 0, attempts = 0;
  bool signs_ok = true;
  while (accepted < 20 && attempts < 80) {
    ++attempts;
    EpidemicModel m;
    const double ca = 0.6 + 1.4 * U(rng);
    const double cb = 0.6 + 1.4 * U(rng);
    m.a = cosine_field(ca, 1 + attempts % 3, 0.4 * ca * (2.0 * U(rng) - 1.0));
    m.b = cosine_field(cb, 1 + (attempts + 1) % 3,
                       0.4 * cb * (2.0 * U(rng) - 1.0));
    m.H = make_nonlinearity(U(rng) < 0.5 ? "log_saturating" : "linear",
                            std::exp(std::log(0.4) +
                                     U(rng) * std::log(2.5 / 0.4)));
    m.G = make_nonlinearity(U(rng) < 0.5 ? "michaelis_menten" : "log_saturating",
                            std::exp(std::log(0.4) +
                                     U(rng) * std::log(2.5 / 0.4)),
                            0.5 + 1.5 * U(rng));
    m.d = {0.5 + U(rng), 0.5 + U(rng)};
    m.s = {0.35 + 0.6 * U(rng), 0.35 + 0.6 * U(rng)};

    const double r0r = compute_R0(m, basis);
    const double lpr =
        principal_auto(basis, m.d, m.s, linearize(m).A_lin).lambda_p;
    if (std::abs(lpr) <= tol::threshold_borderline) continue;
    ++accepted;
    signs_ok = signs_ok && ((r0r > 1.0) == (lpr < 0.0));
  }
  t.require(accepted >= 20 && signs_ok,
            fmt::format("sign(R0 - 1) = -sign(lambda_p) on {} randomized "
                        "instances",
                        accepted));
  return {11, "reproduction-number", t.pass, t.detail};
}

// --------------------------------------------------------------- check 12

CheckResult check_steady_state(unsigned long long) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 32);

  const EpidemicModel model = supercritical_model();
  const SteadyState st = steady_state(model, basis, 1e-8);
  const auto oracle = ref::scalar_steady(1.0, 1.0, model.H, model.G);
  t.require(oracle.has_value(), "scalar oracle admits a positive root");
  if (oracle) {
    const double err =
        std::max(sup_abs(st.u1.u - oracle->u), sup_abs(st.u1.v - oracle->v));
    t.require(err <= tol::steady_oracle,
              fmt::format("steady state vs scalar bisection err={:.2e} "
                          "(u*={:.12g}, v*={:.12g})",
                          err, oracle->u, oracle->v));
  }
  t.require(st.sandwich_gap <= tol::sandwich_gap,
            fmt::format("monotone sandwich gap={:.2e} after {} iterations",
                        st.sandwich_gap, st.iterations));

  bool refused = false;
  std::string msg;
  try {
    steady_state(subcritical_model(), basis, 1e-8);
  } catch (const numeric_failure& e) {
    msg = e.what();
    refused = msg.find("non-existence") != std::string::npos;
  }
  t.require(refused, "subcritical model rejected with a non-existence report");
  return {12, "steady-state", t.pass, t.detail};
}

// --------------------------------------------------------------- check 13

CheckResult check_long_time_dynamics(unsigned long long) {
  Tally t;
  const Domain dom = make_interval(M_PI, BC::neumann);
  const EigenBasis basis = build_basis(dom, 32);
  const Eigen::Index P = basis.grid.size();

  const EpidemicModel sup = supercritical_model();
  const EpidemicModel sub = subcritical_model();
  const GridPair start{Eigen::ArrayXd::Constant(P, 0.1),
                       Eigen::ArrayXd::Constant(P, 0.1)};

  // Constant data evolve as the two-component reaction system alone.
  EvolveOptions opts;
  opts.store_every = 1000;
  const Trajectory short_run = evolve(sup, basis, start, 1e-3, 5.0, opts);
  const auto rhs = [&](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd f(2);
    f[0] = -y[0] + sup.H(y[1]);
    f[1] = -y[1] + sup.G(y[0]);
    return f;
  };
  Eigen::VectorXd y0(2);
  y0 << 0.1, 0.1;
  const Eigen::VectorXd yT = ref::rk4(rhs, y0, 0.0, 5.0, 5000);
  const GridPair& uT = short_run.states.back();
  const double ode_err =
      std::max(sup_abs(uT.u - yT[0]), sup_abs(uT.v - yT[1]));
  t.require(ode_err <= tol::ode_oracle,
            fmt::format("trajectory vs Runge-Kutta reduction err={:.2e} at T=5",
                        ode_err));

  // Long runs at two step sizes for both regimes.
  opts.store_every = 4000;
  const Trajectory per1 = evolve(sup, basis, start, 1e-3, 80.0, opts);
  const Trajectory per2 = evolve(sup, basis, start, 5e-4, 80.0, opts);
  const GridPair start_e{Eigen::ArrayXd::Constant(P, 0.5),
                         Eigen::ArrayXd::Constant(P, 0.5)};
  const Trajectory ext1 = evolve(sub, basis, start_e, 1e-3, 80.0, opts);
  const Trajectory ext2 = evolve(sub, basis, start_e, 5e-4, 80.0, opts);

  const SteadyState st = steady_state(sup, basis, 1e-8);
  const Classification cp1 = classify_long_time(sup, basis, per1, st);
  const Classification cp2 = classify_long_time(sup, basis, per2, st);
  const Classification ce1 = classify_long_time(sub, basis, ext1, std::nullopt);
  const Classification ce2 = classify_long_time(sub, basis, ext2, std::nullopt);

  t.require(cp1.kind == Classification::Kind::persistence &&
                cp1.distance <= tol::persistence_dist,
            fmt::format("persistence: distance to steady state {:.2e} at T=80",
                        cp1.distance));
  t.require(ce1.kind == Classification::Kind::extinction &&
                ce1.rate >= tol::extinction_factor * ce1.lambda_p,
            fmt::format("extinction: decay rate {:.6g} vs lambda_p {:.6g}",
                        ce1.rate, ce1.lambda_p));
  t.require(cp1.kind == cp2.kind && ce1.kind == ce2.kind,
            "halving dt preserves both classifications");

  // Every recorded step of every run stays inside [0, (M1, M2)] up to the
  // negativity budget.
  double worst_low = 0.0, worst_high = 0.0;
  for (const Trajectory* tr : {&short_run, &per1, &per2, &ext1, &ext2}) {
    for (const TrajectoryPoint& p : tr->summary) {
      worst_low = std::min(worst_low, std::min(p.min_u, p.min_v));
      worst_high = std::max(worst_high,
                            std::max(p.sup_u - tr->M1, p.sup_v - tr->M2));
    }
  }
  t.require(worst_low >= -tol::state_negativity &&
                worst_high <= tol::state_negativity,
            fmt::format("states confined: min {:+.2e}, overshoot {:+.2e}",
                        worst_low, worst_high));

  // Ordered initial data stay ordered.
  GridPair lo_start{0.1 * (1.0 + 0.3 * basis.grid.x.cos()),
                    0.1 * (1.0 + 0.2 * basis.grid.x.cos())};
  GridPair hi_start{lo_start.u + 0.05, lo_start.v + 0.05};
  opts.store_every = 500;
  const Trajectory lo_run = evolve(sup, basis, lo_start, 1e-3, 2.0, opts);
  const Trajectory hi_run = evolve(sup, basis, hi_start, 1e-3, 2.0, opts);
  double worst_order = 0.0;
  for (std::size_t i = 0; i < lo_run.states.size(); ++i) {
    worst_order = std::max(
        worst_order, (lo_run.states[i].u - hi_run.states[i].u).maxCoeff());
    worst_order = std::max(
        worst_order, (lo_run.states[i].v - hi_run.states[i].v).maxCoeff());
  }
  t.require(worst_order <= tol::order_preservation,
            fmt::format("comparison preserved, worst crossing {:+.2e}",
                        worst_order));
  return {13, "long-time-dynamics", t.pass, t.detail};
}

// --------------------------------------------------------------- check 14

CheckResult check_basis_hygiene(unsigned long long seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);

  struct Case {
    const char* tag;
    Domain dom;
    double gram_tol;
  };
  const Case cases[] = {
      {"interval-neumann", make_interval(M_PI, BC::neumann), tol::gram_interval},
      {"interval-dirichlet", make_interval(M_PI, BC::dirichlet),
       tol::gram_interval},
      {"rectangle-neumann", make_rectangle(M_PI, 1.5, BC::neumann),
       tol::gram_rectangle},
      {"rectangle-dirichlet", make_rectangle(M_PI, 1.5, BC::dirichlet),
       tol::gram_rectangle},
  };
  for (const Case& c : cases) {
    const EigenBasis basis = build_basis(c.dom, 128);
    const Eigen::MatrixXd gram =
        basis.phi * basis.grid.w.matrix().asDiagonal() * basis.phi.transpose();
    const double gram_err =
        (gram - Eigen::MatrixXd::Identity(128, 128)).array().abs().maxCoeff();
    t.require(gram_err <= c.gram_tol,
              fmt::format("{} orthonormality err={:.2e}", c.tag, gram_err));

    Eigen::VectorXd coeffs(128);
    for (int k = 0; k < 128; ++k) coeffs[k] = N01(rng);
    const double rt_err =
        (project(synthesize(coeffs, basis), basis) - coeffs).cwiseAbs().maxCoeff();
    t.require(rt_err <= tol::roundtrip,
              fmt::format("{} round trip err={:.2e}", c.tag, rt_err));
  }
  return {14, "basis-hygiene", t.pass, t.detail};
}

// ----------------------------------------------------------------- table

using CheckFn = CheckResult (*)(unsigned long long);

struct Entry {
  int index;
  const char* name;
  CheckFn fn;
};

constexpr Entry kEntries[] = {
    {1, "constant-oracle", &check_constant_oracle},
    {2, "cross-validation", &check_cross_validation},
    {3, "variational-bound", &check_variational_bound},
    {4, "diffusion-gradient", &check_diffusion_gradient},
    {5, "shape-grid", &check_shape_grid},
    {6, "diffusion-limits", &check_diffusion_limits},
    {7, "order-limits", &check_order_limits},
    {8, "domain-scaling", &check_domain_scaling},
    {9, "domain-monotonicity", &check_domain_monotonicity_chain},
    {10, "max-principle", &check_max_principle},
    {11, "reproduction-number", &check_reproduction_number},
    {12, "steady-state", &check_steady_state},
    {13, "long-time-dynamics", &check_long_time_dynamics},
    {14, "basis-hygiene", &check_basis_hygiene},
};

unsigned long long derive_seed(unsigned long long seed, int index) {
  unsigned long long z =
      seed + 0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(index);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const Entry& e : kEntries) names.emplace_back(e.name);
  return names;
}

CheckResult run_check(const std::string& name, unsigned long long seed) {
  for (const Entry& e : kEntries) {
    if (name != e.name) continue;
    try {
      return e.fn(derive_seed(seed, e.index));
    } catch (const std::exception& ex) {
      return {e.index, e.name, false, std::string("exception: ") + ex.what()};
    }
  }
  throw invalid_input("unknown check: " + name);
}

std::vector<CheckResult> run_all_checks(unsigned long long seed) {
  std::vector<CheckResult> results;
  for (const Entry& e : kEntries) results.push_back(run_check(e.name, seed));
  return results;
}

}  // namespace fraccoop::checks
