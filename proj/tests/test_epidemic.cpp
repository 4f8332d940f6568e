#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "fraccoop/epidemic.hpp"
#include "fraccoop/reference.hpp"
#include "fraccoop/tolerances.hpp"

using namespace fraccoop;

namespace {
const Domain kDom = make_interval(M_PI, BC::neumann);

EpidemicModel supercritical() {
  EpidemicModel m;
  m.a = constant_field(1.0);
  m.b = constant_field(1.0);
  m.H = make_nonlinearity("log_saturating", 2.0);
  m.G = make_nonlinearity("michaelis_menten", 1.0, 1.0);
  return m;
}

EpidemicModel subcritical() {
  EpidemicModel m;
  m.a = constant_field(2.0);
  m.b = constant_field(2.0);
  m.H = make_nonlinearity("log_saturating", 1.0);
  m.G = make_nonlinearity("michaelis_menten", 1.0, 1.0);
  return m;
}

GridPair constant_pair(const EigenBasis& basis, double u, double v) {
  return {Eigen::ArrayXd::Constant(basis.grid.size(), u),
          Eigen::ArrayXd::Constant(basis.grid.size(), v)};
}
}  // namespace

TEST_CASE("nonlinearity families evaluate and classify correctly") {
  const Nonlinearity log2 = make_nonlinearity("log_saturating", 2.0);
  CHECK(log2(0.0) == 0.0);
  CHECK(log2(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(log2.dprime0() == 2.0);
  CHECK(log2.unbounded());
  CHECK(log2.strictly_concave());

  const Nonlinearity mm = make_nonlinearity("michaelis_menten", 1.0, 2.0);
  CHECK(mm(2.0) == doctest::Approx(1.0).epsilon(1e-14));  // p z / (1 + z/k)
  CHECK_FALSE(mm.unbounded());
  CHECK(mm.strictly_concave());

  const Nonlinearity lin = make_nonlinearity("linear", 3.0);
  CHECK(lin(2.0) == 6.0);
  CHECK_FALSE(lin.strictly_concave());

  CHECK_THROWS_AS((void)make_nonlinearity("cubic", 1.0), invalid_input);
}

TEST_CASE("model validation rejects non-admissible data") {
  const EigenBasis basis = build_basis(kDom, 16);

  EpidemicModel bad_a = supercritical();
  bad_a.a = cosine_field(0.5, 1, 1.0);  // dips negative
  CHECK_THROWS_AS((void)validate_model(bad_a, kDom, basis.grid),
                  invalid_input);

  EpidemicModel bounded_h = supercritical();
  bounded_h.H = make_nonlinearity("michaelis_menten", 2.0);
  CHECK_THROWS_AS((void)validate_model(bounded_h, kDom, basis.grid),
                  invalid_input);

  EpidemicModel bad_s = supercritical();
  bad_s.s = {0.5, 1.5};
  CHECK_THROWS_AS((void)validate_model(bad_s, kDom, basis.grid),
                  invalid_input);

  const EigenBasis dirichlet =
      build_basis(make_interval(M_PI, BC::dirichlet), 16);
  CHECK_THROWS_AS(
      (void)validate_model(supercritical(), dirichlet.domain, dirichlet.grid),
      invalid_input);

  const ModelBounds mb = validate_model(supercritical(), kDom, basis.grid);
  CHECK(mb.a_min == 1.0);
  CHECK(mb.z_bar > 0.0);
}

TEST_CASE("linearization carries the slopes at zero") {
  const LinearizationData lin = linearize(supercritical());
  CHECK(lin.Hp0 == 2.0);
  CHECK(lin.Gp0 == 1.0);
  const EigenBasis basis = build_basis(kDom, 16);
  const MatrixFieldValues vals = materialize(lin.A_lin, kDom, basis.grid);
  CHECK(vals.a11[0] == 1.0);
  CHECK(vals.a12[0] == -2.0);
  CHECK(vals.a21[0] == -1.0);
  CHECK(vals.a22[0] == 1.0);
}

TEST_CASE("reproduction number matches the constant-coefficient formula") {
  const EigenBasis basis = build_basis(kDom, 32);
  // Constant coefficients: R0 = H'(0) G'(0) / (a b).
  CHECK(compute_R0(supercritical(), basis) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(compute_R0(subcritical(), basis) ==
        doctest::Approx(0.25).epsilon(1e-10));

  const R0FixedPointReport fp =
      r0_fixed_point_check(supercritical(), basis, 2.0);
  CHECK(fp.bracketed);
  CHECK(std::abs(fp.residual) < tol::r0_fixed_point);
  CHECK(fp.s_below > 0.0);
  CHECK(fp.s_above < 0.0);
}

TEST_CASE("super- and sub-solutions sandwich the dynamics") {
  const EigenBasis basis = build_basis(kDom, 32);
  const SuperSolution sup = super_solution(supercritical(), kDom, basis.grid);
  CHECK(sup.supercritical);
  CHECK(sup.M1 > 0.0);
  CHECK(sup.M2 > 0.0);
  CHECK(sup.margin1 >= 0.0);
  CHECK(sup.margin2 >= 0.0);

  const std::optional<SubSolution> sub =
      sub_solution(supercritical(), basis);
  REQUIRE(sub.has_value());
  CHECK(sub->pair.u.minCoeff() > 0.0);
  CHECK(sub->pair.v.minCoeff() > 0.0);

  CHECK_FALSE(sub_solution(subcritical(), basis).has_value());
}

TEST_CASE("steady state matches the scalar oracle") {
  const EigenBasis basis = build_basis(kDom, 32);
  const SteadyState st = steady_state(supercritical(), basis, 1e-10);
  const std::optional<ref::ScalarSteady> oracle = ref::scalar_steady(
      1.0, 1.0, supercritical().H, supercritical().G);
  REQUIRE(oracle.has_value());
  CHECK(st.u1.u.maxCoeff() == doctest::Approx(oracle->u).epsilon(1e-8));
  CHECK(st.u1.v.maxCoeff() == doctest::Approx(oracle->v).epsilon(1e-8));
  // Frozen closed-loop values of this instance.
  CHECK(oracle->u == doctest::Approx(0.6794663574167101).epsilon(1e-12));
  CHECK(oracle->v == doctest::Approx(0.4045727706399781).epsilon(1e-12));
  CHECK(st.sandwich_gap < tol::sandwich_gap);
  CHECK(st.r0 == doctest::Approx(2.0).epsilon(1e-8));

  CHECK_THROWS_AS((void)steady_state(subcritical(), basis), numeric_failure);
  CHECK_FALSE(ref::scalar_steady(2.0, 2.0, subcritical().H, subcritical().G)
                  .has_value());
}

TEST_CASE("time stepping tracks the spatially flat ODE") {
  const EigenBasis basis = build_basis(kDom, 24);
  const EpidemicModel model = supercritical();
  const Trajectory traj =
      evolve(model, basis, constant_pair(basis, 0.1, 0.1), 1e-3, 5.0);

  auto rhs = [&](double, const Eigen::VectorXd& y) {
    Eigen::VectorXd f(2);
    f[0] = -y[0] + model.H(y[1]);
    f[1] = -y[1] + model.G(y[0]);
    return f;
  };
  Eigen::VectorXd y0(2);
  y0 << 0.1, 0.1;
  const Eigen::VectorXd ode = ref::rk4(rhs, y0, 0.0, 5.0, 5000);
  // Frozen endpoint of the reference integrator.
  CHECK(ode[0] == doctest::Approx(0.38630104377933616).epsilon(1e-12));
  CHECK(ode[1] == doctest::Approx(0.24687371875239533).epsilon(1e-12));

  const TrajectoryPoint& end = traj.summary.back();
  CHECK(end.t == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(end.sup_u == doctest::Approx(ode[0]).epsilon(1e-3));
  CHECK(std::abs(end.sup_u - ode[0]) < tol::ode_oracle);
  CHECK(std::abs(end.min_v - ode[1]) < tol::ode_oracle);
  CHECK(traj.total_clip == 0.0);
  CHECK(traj.M1 >= end.sup_u);
  CHECK(traj.M2 >= end.sup_v);
}

TEST_CASE("order preservation and state bounds along trajectories") {
  const EigenBasis basis = build_basis(kDom, 24);
  const EpidemicModel model = supercritical();
  Eigen::ArrayXd bump(basis.grid.size());
  for (int p = 0; p < basis.grid.size(); ++p)
    bump[p] = 1.0 + 0.3 * std::cos(basis.grid.x[p]);

  EvolveOptions opts;
  opts.store_every = 250;
  const GridPair lo_start{0.1 * bump, 0.08 * bump};
  const GridPair hi_start{0.1 * bump + 0.05, 0.08 * bump + 0.05};
  const Trajectory lo = evolve(model, basis, lo_start, 1e-3, 2.0, opts);
  const Trajectory hi = evolve(model, basis, hi_start, 1e-3, 2.0, opts);
  REQUIRE(lo.states.size() == hi.states.size());
  for (std::size_t k = 0; k < lo.states.size(); ++k) {
    CHECK((hi.states[k].u - lo.states[k].u).minCoeff() >=
          -tol::order_preservation);
    CHECK((hi.states[k].v - lo.states[k].v).minCoeff() >=
          -tol::order_preservation);
  }
  for (const TrajectoryPoint& pt : lo.summary) {
    CHECK(pt.min_u >= -tol::state_negativity);
    CHECK(pt.sup_u <= lo.M1 + tol::state_negativity);
    CHECK(pt.sup_v <= lo.M2 + tol::state_negativity);
  }
}

TEST_CASE("long-time runs classify by the threshold") {
  const EigenBasis basis = build_basis(kDom, 24);
  EvolveOptions opts;
  opts.store_every = 3000;

  const EpidemicModel sup = supercritical();
  const Trajectory up =
      evolve(sup, basis, constant_pair(basis, 0.1, 0.1), 1e-3, 30.0, opts);
  const SteadyState st = steady_state(sup, basis);
  const Classification persist = classify_long_time(sup, basis, up, st);
  CHECK(persist.kind == Classification::Kind::persistence);
  CHECK(persist.distance < tol::persistence_dist);
  CHECK(persist.r0 == doctest::Approx(2.0).epsilon(1e-8));

  const EpidemicModel sub = subcritical();
  const Trajectory down =
      evolve(sub, basis, constant_pair(basis, 0.5, 0.5), 1e-3, 30.0, opts);
  const Classification extinct = classify_long_time(sub, basis, down,
                                                    std::nullopt);
  CHECK(extinct.kind == Classification::Kind::extinction);
  CHECK(extinct.lambda_p == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(extinct.rate >= tol::extinction_factor * extinct.lambda_p);
}

TEST_CASE("evolve validates its inputs") {
  const EigenBasis basis = build_basis(kDom, 16);
  const EpidemicModel model = supercritical();
  CHECK_THROWS_AS(
      (void)evolve(model, basis, constant_pair(basis, 0.1, 0.1), -1e-3, 1.0),
      invalid_input);
  CHECK_THROWS_AS(
      (void)evolve(model, basis, constant_pair(basis, -0.5, 0.1), 1e-3, 1.0),
      invalid_input);
  EvolveOptions bad;
  bad.store_every = 0;
  CHECK_THROWS_AS(
      (void)evolve(model, basis, constant_pair(basis, 0.1, 0.1), 1e-3, 1.0,
                   bad),
      invalid_input);
}
