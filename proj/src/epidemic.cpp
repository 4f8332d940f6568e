#include "fraccoop/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraccoop/tolerances.hpp"

namespace fraccoop {
namespace {

Eigen::ArrayXd apply_nl(const Nonlinearity& f, const Eigen::ArrayXd& z) {
  Eigen::ArrayXd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = f(z[i]);
  return out;
}

double sup_norm(const GridPair& g) {
  return std::max(g.u.abs().maxCoeff(), g.v.abs().maxCoeff());
}

}  // namespace

double Nonlinearity::operator()(double z) const {
  switch (family) {
    case Family::log_saturating: return p * std::log1p(z);
    case Family::michaelis_menten: return p * z / (1.0 + z / kappa);
    case Family::linear: return p * z;
  }
  return 0.0;
}

std::string Nonlinearity::name() const {
  switch (family) {
    case Family::log_saturating: return "log_saturating";
    case Family::michaelis_menten: return "michaelis_menten";
    case Family::linear: return "linear";
  }
  return "unknown";
}

Nonlinearity make_nonlinearity(const std::string& family, double p,
                               double kappa) {
  if (!(p > 0.0)) throw invalid_input("nonlinearity slope p must be positive");
  Nonlinearity f;
  f.p = p;
  f.kappa = kappa;
  if (family == "log_saturating") {
    f.family = Nonlinearity::Family::log_saturating;
  } else if (family == "michaelis_menten") {
    if (!(kappa > 0.0))
      throw invalid_input("michaelis_menten saturation scale must be positive");
    f.family = Nonlinearity::Family::michaelis_menten;
  } else if (family == "linear") {
    f.family = Nonlinearity::Family::linear;
  } else {
    throw invalid_input("unknown nonlinearity family: " + family);
  }
  return f;
}

ModelBounds validate_model(const EpidemicModel& model, const Domain& domain,
                           const Grid& grid) {
  if (domain.bc != BC::neumann)
    throw invalid_input(
        "the endemic model is posed with reflecting (Neumann) boundaries");
  for (int i = 0; i < 2; ++i) {
    if (!(model.d[i] > 0.0))
      throw invalid_input("diffusion coefficients must be positive");
    if (!(model.s[i] > 0.0 && model.s[i] <= 1.0))
      throw invalid_input("fractional orders must lie in (0, 1]");
  }
  if (!(model.H.p > 0.0) || !(model.G.p > 0.0))
    throw invalid_input("reaction slopes at zero must be positive");
  if (!model.H.unbounded())
    throw invalid_input(
        "the transmission response H must be unbounded (saturating families "
        "are admitted for G only)");

  const Eigen::ArrayXd a_vals = field_values(model.a, domain, grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, domain, grid);
  ModelBounds mb;
  mb.a_min = a_vals.minCoeff();
  mb.a_max = a_vals.maxCoeff();
  mb.b_min = b_vals.minCoeff();
  mb.b_max = b_vals.maxCoeff();
  if (!(mb.a_min > 0.0 && mb.b_min > 0.0))
    throw invalid_input("removal rates must be positive on the whole domain");

  // Saturation witness: some z with G(H(z)/a_min) < b_min z, found by
  // doubling.  Its absence means the reaction outruns removal at every
  // amplitude and no bounded super-solution exists.
  double z = 1.0;
  for (int it = 0; it < 200; ++it) {
    if (model.G(model.H(z) / mb.a_min) < mb.b_min * z) {
      mb.z_bar = z;
      return mb;
    }
    z *= 2.0;
  }
  throw invalid_input(
      "no saturation amplitude found: G(H(z)/a_min) never drops below "
      "b_min z, so the model admits no bounded super-solution");
}

LinearizationData linearize(const EpidemicModel& model) {
  LinearizationData lin;
  lin.Hp0 = model.H.dprime0();
  lin.Gp0 = model.G.dprime0();
  if (!(lin.Hp0 > 0.0) || !(lin.Gp0 > 0.0))
    throw invalid_input("reaction slopes at zero must be positive");
  lin.A_lin.a11 = model.a;
  lin.A_lin.a12 = constant_field(-lin.Hp0);
  lin.A_lin.a21 = constant_field(-lin.Gp0);
  lin.A_lin.a22 = model.b;
  return lin;
}

double compute_R0(const EpidemicModel& model, const EigenBasis& basis) {
  validate_model(model, basis.domain, basis.grid);
  const LinearizationData lin = linearize(model);
  const int N = basis.n_modes;

  const Eigen::ArrayXd a_vals = field_values(model.a, basis.domain, basis.grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, basis.domain, basis.grid);
  Eigen::MatrixXd T1 = galerkin_matrix(basis, a_vals);
  Eigen::MatrixXd T2 = galerkin_matrix(basis, b_vals);
  T1.diagonal() += fractional_multipliers(basis, model.d[0], model.s[0]).matrix();
  T2.diagonal() += fractional_multipliers(basis, model.d[1], model.s[1]).matrix();

  // Transition part B = -[[T1, -Hp0 I], [0, T2]] is block upper triangular;
  // its spectral bound is negative exactly when T1, T2 are positive definite.
  const double m1 =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T1, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  const double m2 =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T2, Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (!(m1 > 0.0 && m2 > 0.0))
    throw invalid_input(
        "the transition part is not strictly dissipative; the reproduction "
        "number is undefined");

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  B.topLeftCorner(N, N) = -T1;
  B.bottomRightCorner(N, N) = -T2;
  B.topRightCorner(N, N) = lin.Hp0 * Eigen::MatrixXd::Identity(N, N);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);

  // Power iteration for the radius of -F B^{-1} on the nonnegative cone;
  // F carries only Gp0 in the (2,1) block.
  GridPair ones{Eigen::ArrayXd::Ones(basis.grid.size()),
                Eigen::ArrayXd::Ones(basis.grid.size())};
  Eigen::VectorXd y = project_pair(ones, basis);
  y /= sup_norm(synthesize_pair(y, basis));

  double prev = -1.0;
  int calm = 0;
  for (int it = 1; it <= tol::power_max_iter; ++it) {
    const Eigen::VectorXd x = lu.solve(y);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(2 * N);
    z.tail(N) = -lin.Gp0 * x.head(N);
    const double r = sup_norm(synthesize_pair(z, basis));
    if (!(r > 0.0))
      throw numeric_failure("reproduction-number iteration collapsed to zero");
    y = z / r;
    calm = std::abs(r - prev) <= tol::power_tol * std::max(1.0, r) ? calm + 1 : 0;
    prev = r;
    if (calm >= 2) return prev;
  }
  throw numeric_failure("reproduction-number power iteration did not converge");
}

R0FixedPointReport r0_fixed_point_check(const EpidemicModel& model,
                                        const EigenBasis& basis, double r0) {
  if (!(r0 > 0.0)) throw invalid_input("r0 must be positive");
  const LinearizationData lin = linearize(model);
  auto spectral_bound = [&](double mu) {
    MatrixField A;
    A.a11 = model.a;
    A.a12 = constant_field(-lin.Hp0);
    A.a21 = constant_field(-lin.Gp0 / mu);
    A.a22 = model.b;
    return -principal_auto(basis, model.d, model.s, A).lambda_p;
  };
  R0FixedPointReport rep;
  rep.residual = std::abs(spectral_bound(r0));
  rep.s_below = spectral_bound(0.9 * r0);
  rep.s_above = spectral_bound(1.1 * r0);
  rep.bracketed = rep.s_below > 0.0 && rep.s_above < 0.0;
  return rep;
}

SuperSolution super_solution(const EpidemicModel& model, const Domain& domain,
                             const Grid& grid, Pair2 floor) {
  if (floor[0] < 0.0 || floor[1] < 0.0)
    throw invalid_input("super-solution floor must be nonnegative");
  const ModelBounds mb = validate_model(model, domain, grid);
  const LinearizationData lin = linearize(model);
  const Eigen::ArrayXd a_vals = field_values(model.a, domain, grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, domain, grid);

  SuperSolution out;
  out.supercritical = lin.Hp0 * lin.Gp0 > mb.a_min * mb.b_min;

  if (out.supercritical) {
    // Excess map h(z) = G(H(z)/a_min) - b_min z is concave, positive near 0
    // and negative at the saturation witness; locate its root.
    auto h = [&](double z) {
      return model.G(model.H(z) / mb.a_min) - mb.b_min * z;
    };
    const double z_top = mb.z_bar;
    double lo = 0.0, hi = 0.0;
    const int scan = 400;
    for (int i = scan; i >= 1; --i) {
      // Log-spaced scan from z_top down to z_top * 1e-12.
      const double z = z_top * std::pow(1e-12, 1.0 - double(i) / scan);
      if (h(z) > 0.0) {
        lo = z;
        hi = z_top * std::pow(1e-12, 1.0 - double(i + 1) / scan);
        break;
      }
    }
    if (!(lo > 0.0))
      throw numeric_failure("no positive excess found while rooting h");
    while (hi - lo > 1e-12 * std::max(1.0, hi))
      (h(0.5 * (lo + hi)) > 0.0 ? lo : hi) = 0.5 * (lo + hi);
    out.K2 = 0.5 * (lo + hi);

    out.M2 = std::max(2.0 * out.K2, floor[1]);
    int guard = 0;
    while (model.H(out.M2) / mb.a_min < floor[0]) {
      out.M2 *= 2.0;
      if (++guard > 300)
        throw numeric_failure("super-solution floor could not be dominated");
    }
    out.M1 = model.H(out.M2) / mb.a_min;
  } else {
    // Linear regime: balance Hp0 M2 <= a_min M1 and Gp0 M1 <= b_min M2 at
    // the geometric mean, then scale over the floor.
    const double m2 = 1.0;
    const double m1 = std::sqrt((lin.Hp0 * m2 / mb.a_min) *
                                (mb.b_min * m2 / lin.Gp0));
    const double alpha =
        std::max({1.0, floor[0] / m1, floor[1] / m2});
    out.M1 = alpha * m1;
    out.M2 = alpha * m2;
  }

  out.margin1 = (a_vals * out.M1).minCoeff() - model.H(out.M2);
  out.margin2 = (b_vals * out.M2).minCoeff() - model.G(out.M1);
  if (out.margin1 < -1e-12 * std::max(1.0, model.H(out.M2)) ||
      !(out.margin2 > 0.0))
    throw invalid_input(
        "no strict constant super-solution exists for these rates (threshold "
        "or supercritical-linear data)");
  return out;
}

std::optional<SubSolution> sub_solution(const EpidemicModel& model,
                                        const EigenBasis& basis,
                                        double epsilon_init) {
  if (!(epsilon_init > 0.0))
    throw invalid_input("sub-solution epsilon must start positive");
  validate_model(model, basis.domain, basis.grid);
  const LinearizationData lin = linearize(model);
  const PrincipalEigenpair eig =
      principal_auto(basis, model.d, model.s, lin.A_lin);
  if (eig.lambda_p >= 0.0) return std::nullopt;
  if (!(eig.positivity_margin > 0.0))
    throw numeric_failure("linearized eigenfunction lost positivity");

  const int N = basis.n_modes;
  const Eigen::ArrayXd Lphi1 =
      synthesize(apply_fractional(basis, model.d[0], model.s[0],
                                  eig.coeffs.head(N)),
                 basis);
  const Eigen::ArrayXd Lphi2 =
      synthesize(apply_fractional(basis, model.d[1], model.s[1],
                                  eig.coeffs.tail(N)),
                 basis);
  const Eigen::ArrayXd a_vals = field_values(model.a, basis.domain, basis.grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, basis.domain, basis.grid);

  for (double eps = epsilon_init; eps >= tol::sub_eps_min; eps *= 0.5) {
    const Eigen::ArrayXd u = eps * eig.phi.u;
    const Eigen::ArrayXd v = eps * eig.phi.v;
    const double m1 =
        (-a_vals * u + apply_nl(model.H, v) - eps * Lphi1).minCoeff();
    const double m2 =
        (-b_vals * v + apply_nl(model.G, u) - eps * Lphi2).minCoeff();
    if (m1 >= 0.0 && m2 >= 0.0) {
      SubSolution sub;
      sub.eps = eps;
      sub.pair = {u, v};
      sub.linearized = eig;
      return sub;
    }
  }
  throw numeric_failure(
      "sub-solution amplitude underflowed: the spectral margin is too thin "
      "for this truncation");
}

SteadyState steady_state(const EpidemicModel& model, const EigenBasis& basis,
                         double tol) {
  const ModelBounds mb = validate_model(model, basis.domain, basis.grid);
  const double r0 = compute_R0(model, basis);
  if (!(r0 > 1.0))
    throw numeric_failure(
        "non-existence: the reproduction number is at or below one, so only "
        "the disease-free state remains");

  const std::optional<SubSolution> sub = sub_solution(model, basis);
  if (!sub)
    throw numeric_failure(
        "threshold inconsistency: reproduction number above one but the "
        "spectral bound is not negative");
  const SuperSolution sup = super_solution(
      model, basis.domain, basis.grid,
      {sub->pair.u.maxCoeff(), sub->pair.v.maxCoeff()});

  const double beta = std::max(mb.a_max, mb.b_max) + 1.0;
  const Eigen::ArrayXd a_vals = field_values(model.a, basis.domain, basis.grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, basis.domain, basis.grid);
  auto step = [&](const GridPair& w) {
    GridPair rhs{beta * w.u - a_vals * w.u + apply_nl(model.H, w.v),
                 beta * w.v - b_vals * w.v + apply_nl(model.G, w.u)};
    return synthesize_pair(
        resolvent_apply(basis, model.d, model.s, beta, project_pair(rhs, basis)),
        basis);
  };

  const int P = basis.grid.size();
  GridPair up = sub->pair;
  GridPair down{Eigen::ArrayXd::Constant(P, sup.M1),
                Eigen::ArrayXd::Constant(P, sup.M2)};

  SteadyState out;
  out.r0 = r0;
  double gap = std::numeric_limits<double>::infinity();
  const int cap = 20000;
  for (int it = 1; it <= cap; ++it) {
    const GridPair up_next = step(up);
    const GridPair down_next = step(down);
    const double mono_up = std::min((up_next.u - up.u).minCoeff(),
                                    (up_next.v - up.v).minCoeff());
    const double mono_down = std::min((down.u - down_next.u).minCoeff(),
                                      (down.v - down_next.v).minCoeff());
    const double order = std::min((down_next.u - up_next.u).minCoeff(),
                                  (down_next.v - up_next.v).minCoeff());
    if (mono_up < -tol::monotone_step || mono_down < -tol::monotone_step ||
        order < -tol::monotone_step)
      throw numeric_failure("monotone iteration lost its ordering");
    up = up_next;
    down = down_next;
    out.iterations = it;
    gap = std::max((down.u - up.u).abs().maxCoeff(),
                   (down.v - up.v).abs().maxCoeff());
    if (gap <= tol) break;
  }
  if (gap > tol)
    throw numeric_failure("monotone iteration did not close the sandwich");
  out.sandwich_gap = gap;
  out.u1 = {0.5 * (up.u + down.u), 0.5 * (up.v + down.v)};

  const Eigen::VectorXd c = project_pair(out.u1, basis);
  const int N = basis.n_modes;
  const Eigen::ArrayXd r1 =
      synthesize(apply_fractional(basis, model.d[0], model.s[0], c.head(N)),
                 basis) +
      a_vals * out.u1.u - apply_nl(model.H, out.u1.v);
  const Eigen::ArrayXd r2 =
      synthesize(apply_fractional(basis, model.d[1], model.s[1], c.tail(N)),
                 basis) +
      b_vals * out.u1.v - apply_nl(model.G, out.u1.u);
  out.residual = std::max(r1.abs().maxCoeff(), r2.abs().maxCoeff());
  return out;
}

Trajectory evolve(const EpidemicModel& model, const EigenBasis& basis,
                  const GridPair& u0, double dt, double T,
                  const EvolveOptions& opts) {
  if (!(dt > 0.0)) throw invalid_input("time step must be positive");
  if (T < 0.0) throw invalid_input("final time must be nonnegative");
  if (opts.store_every < 1)
    throw invalid_input("checkpoint thinning must be at least 1");
  if (u0.u.size() != basis.grid.size() || u0.v.size() != basis.grid.size())
    throw invalid_input("initial data not sampled on the basis grid");
  if (std::min(u0.u.minCoeff(), u0.v.minCoeff()) < -tol::clip_threshold)
    throw invalid_input("initial data must be nonnegative");
  validate_model(model, basis.domain, basis.grid);

  Trajectory traj;
  traj.dt = dt;

  GridPair state = synthesize_pair(project_pair(u0, basis), basis);
  auto clip = [&](GridPair& g, double t) {
    for (Eigen::ArrayXd* comp : {&g.u, &g.v}) {
      const double m = comp->minCoeff();
      if (m < -tol::state_negativity)
        throw numeric_failure("state dipped to " + std::to_string(m) +
                              " at t = " + std::to_string(t) +
                              "; refine dt or the truncation");
      if (m < 0.0) {
        traj.total_clip += -(comp->min(0.0)).sum();
        *comp = comp->max(0.0);
      }
    }
  };
  clip(state, 0.0);

  const SuperSolution sup =
      super_solution(model, basis.domain, basis.grid,
                     {state.u.maxCoeff(), state.v.maxCoeff()});
  traj.M1 = sup.M1;
  traj.M2 = sup.M2;

  const Eigen::ArrayXd a_vals = field_values(model.a, basis.domain, basis.grid);
  const Eigen::ArrayXd b_vals = field_values(model.b, basis.domain, basis.grid);

  const long long steps =
      T > 0.0 ? std::max(1LL, static_cast<long long>(std::llround(T / dt))) : 0;
  auto record = [&](long long n) {
    const double t = n * dt;
    traj.summary.push_back({t, state.u.maxCoeff(), state.v.maxCoeff(),
                            state.u.minCoeff(), state.v.minCoeff()});
    if (n % opts.store_every == 0 || n == steps) {
      traj.state_times.push_back(t);
      traj.states.push_back(state);
    }
  };
  record(0);

  for (long long n = 1; n <= steps; ++n) {
    GridPair reaction{-a_vals * state.u + apply_nl(model.H, state.v),
                      -b_vals * state.v + apply_nl(model.G, state.u)};
    const Eigen::VectorXd c =
        project_pair(state, basis) + dt * project_pair(reaction, basis);
    state = synthesize_pair(
        semigroup_step(basis, model.d, model.s, dt, c), basis);
    clip(state, n * dt);
    if (state.u.maxCoeff() > sup.M1 + tol::state_negativity ||
        state.v.maxCoeff() > sup.M2 + tol::state_negativity)
      throw numeric_failure(
          "state exceeded its dominating constants; the step size is too "
          "coarse for this model");
    record(n);
  }
  return traj;
}

Classification classify_long_time(const EpidemicModel& model,
                                  const EigenBasis& basis,
                                  const Trajectory& traj,
                                  const std::optional<SteadyState>& steady) {
  if (traj.summary.size() < 4)
    throw invalid_input("trajectory too short to classify");
  const double t0 = traj.summary.front().t;
  const double tf = traj.summary.back().t;
  const double tail_start = 0.5 * (t0 + tf);
  if (tf - tail_start < 5.0 - 1e-9)
    throw invalid_input(
        "trajectory too short: the tail half must span at least 5 time units");

  Classification out;
  out.r0 = compute_R0(model, basis);
  out.lambda_p =
      principal_auto(basis, model.d, model.s, linearize(model).A_lin).lambda_p;

  if (std::abs(out.r0 - 1.0) <= tol::threshold_borderline) {
    out.kind = Classification::Kind::borderline;
    return out;
  }

  if (out.r0 > 1.0) {
    if (traj.states.empty())
      throw invalid_input("trajectory carries no stored states");
    const SteadyState ss = steady ? *steady : steady_state(model, basis);
    const GridPair& fin = traj.states.back();
    out.kind = Classification::Kind::persistence;
    out.distance = std::max((fin.u - ss.u1.u).abs().maxCoeff(),
                            (fin.v - ss.u1.v).abs().maxCoeff());
    return out;
  }

  if (!(out.lambda_p > 0.0))
    throw numeric_failure(
        "threshold inconsistency: reproduction number below one but the "
        "spectral bound is not positive");
  // Least-squares slope of log sup-norm over the tail half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long long cnt = 0;
  for (const TrajectoryPoint& pt : traj.summary) {
    if (pt.t < tail_start) continue;
    const double s = std::max({pt.sup_u, pt.sup_v, 1e-290});
    const double y = std::log(s);
    sx += pt.t;
    sy += y;
    sxx += pt.t * pt.t;
    sxy += pt.t * y;
    ++cnt;
  }
  if (cnt < 2) throw invalid_input("trajectory tail carries too few points");
  const double denom = cnt * sxx - sx * sx;
  if (!(denom > 0.0)) throw numeric_failure("degenerate tail time grid");
  const double slope = (cnt * sxy - sx * sy) / denom;
  out.kind = Classification::Kind::extinction;
  out.rate = -slope;
  out.distance = std::max(traj.summary.back().sup_u, traj.summary.back().sup_v);
  if (out.rate < tol::extinction_factor * out.lambda_p)
    throw numeric_failure(
        "measured decay rate falls below the spectral envelope");
  return out;
}

}  // namespace fraccoop
