#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fraccoop/eigenpair.hpp"

namespace fraccoop {

// Admissible reaction nonlinearities.  All have f(0) = 0 and f'(0) = p > 0.
//   log_saturating:   p * ln(1 + z)        (strictly concave, unbounded)
//   michaelis_menten: p * z / (1 + z/kappa) (strictly concave, bounded)
//   linear:           p * z                 (not strictly concave; admitted
//                                            for linearization utilities only)
struct Nonlinearity {
  enum class Family { log_saturating, michaelis_menten, linear };
  Family family = Family::log_saturating;
  double p = 1.0;
  double kappa = 1.0;  // michaelis_menten only

  double operator()(double z) const;
  double dprime0() const { return p; }     // derivative at zero
  bool strictly_concave() const { return family != Family::linear; }
  bool unbounded() const { return family != Family::michaelis_menten; }
  std::string name() const;
};

Nonlinearity make_nonlinearity(const std::string& family, double p,
                               double kappa = 1.0);

// The two-component endemic model on a Neumann domain:
//   u_t + (-d1 Delta)^{s1} u = -a(x) u + H(v)
//   v_t + (-d2 Delta)^{s2} v = -b(x) v + G(u)
// a, b positive removal rates; H feeds u from v, G feeds v from u.
// H must be unbounded (growth condition); the saturation witness z_bar with
// G(H(z_bar)/a_min) < b_min z_bar is located at construction.
struct EpidemicModel {
  ScalarField a, b;
  Nonlinearity H, G;
  Pair2 d{1.0, 1.0};
  Pair2 s{0.5, 0.5};
};

struct ModelBounds {
  double a_min = 0.0, a_max = 0.0, b_min = 0.0, b_max = 0.0;
  double z_bar = 0.0;  // saturation witness
};

// Validates positivity of a, b on the grid, the nonlinearity family rules,
// and locates z_bar by doubling search.  Throws invalid_input on rejection.
ModelBounds validate_model(const EpidemicModel& model, const Domain& domain,
                           const Grid& grid);

// Linearization at zero: coupling matrix [[a, -H'(0)], [-G'(0), b]] for the
// eigenvalue problem, plus the transmission/transition split used by R0.
struct LinearizationData {
  MatrixField A_lin;
  double Hp0 = 0.0;
  double Gp0 = 0.0;
};

LinearizationData linearize(const EpidemicModel& model);

// Basic reproduction number: spectral radius of -F B^{-1} where
// B = -(-d Delta)^s + diag-triangular transition part and F carries G'(0).
// Requires the spectral bound of B to be negative (validated).
double compute_R0(const EpidemicModel& model, const EigenBasis& basis);

// |s(B + F / r0)| plus the sign change of mu -> s(B + F/mu) across r0.
struct R0FixedPointReport {
  double residual = 0.0;  // |s(B + F/r0)|
  double s_below = 0.0;   // s at 0.9 * r0 (expected > 0)
  double s_above = 0.0;   // s at 1.1 * r0 (expected < 0)
  bool bracketed = false;
};

R0FixedPointReport r0_fixed_point_check(const EpidemicModel& model,
                                        const EigenBasis& basis, double r0);

// Constant super-solution (M1, M2) dominating a caller floor.  Two regimes:
// supercritical linearization (H'(0) G'(0) > a_min b_min) roots the concave
// excess h(z) = G(H(z)/a_min) - b_min z; otherwise the linear inequalities
// -a_min M1 + H'(0) M2 < 0, -b_min M2 + G'(0) M1 < 0 are solved and scaled.
struct SuperSolution {
  double M1 = 0.0, M2 = 0.0;
  double K2 = 0.0;        // largest root of h (supercritical regime only)
  bool supercritical = false;
  double margin1 = 0.0;   // grid min of a(x) M1 - H(M2)  (>= 0)
  double margin2 = 0.0;   // grid min of b(x) M2 - G(M1)  (> 0)
};

SuperSolution super_solution(const EpidemicModel& model, const Domain& domain,
                             const Grid& grid, Pair2 floor = {0.0, 0.0});

// eps * phi_1 for the linearized eigenpair, with eps halved until the
// nonlinear sub-solution inequalities hold pointwise.  Returns nothing when
// lambda_p >= 0 (then eps * phi_1 is a super-solution instead).
struct SubSolution {
  double eps = 0.0;
  GridPair pair;
  PrincipalEigenpair linearized;
};

std::optional<SubSolution> sub_solution(const EpidemicModel& model,
                                        const EigenBasis& basis,
                                        double epsilon_init = 1.0);

// Unique positive steady state by monotone iteration
//   w <- ((-d Delta)^s + beta)^{-1} [beta + B + G](w),  beta = max removal + 1,
// run upward from the sub-solution and downward from the super-solution.
// Throws numeric_failure("non-existence ...") when R0 <= 1.
struct SteadyState {
  GridPair u1;
  double residual = 0.0;      // PDE residual sup-norm
  double sandwich_gap = 0.0;  // final distance between the two sequences
  int iterations = 0;
  double r0 = 0.0;
};

SteadyState steady_state(const EpidemicModel& model, const EigenBasis& basis,
                         double tol = 1e-8);

// Exponential-Euler trajectory.  The semigroup is applied exactly per mode;
// the reaction is explicit.  States are clipped to zero from tiny negative
// values (clip magnitudes accumulated); deeper negativity aborts.
struct TrajectoryPoint {
  double t = 0.0;
  double sup_u = 0.0, sup_v = 0.0;
  double min_u = 0.0, min_v = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> summary;       // every step
  std::vector<double> state_times;            // thinned checkpoints
  std::vector<GridPair> states;               // states at checkpoint times
  double dt = 0.0;
  std::string scheme = "etd1";
  double M1 = 0.0, M2 = 0.0;                  // dominating constants
  double total_clip = 0.0;                    // accumulated clip magnitude
};

struct EvolveOptions {
  int store_every = 100;  // checkpoint thinning (summaries are kept per step)
};

Trajectory evolve(const EpidemicModel& model, const EigenBasis& basis,
                  const GridPair& u0, double dt, double T,
                  const EvolveOptions& opts = {});

// Long-time classification from a trajectory.
struct Classification {
  enum class Kind { persistence, extinction, borderline };
  Kind kind = Kind::borderline;
  double distance = 0.0;    // persistence: final sup distance to steady state
  double rate = 0.0;        // extinction: measured decay exponent
  double lambda_p = 0.0;
  double r0 = 0.0;
};

Classification classify_long_time(const EpidemicModel& model,
                                  const EigenBasis& basis,
                                  const Trajectory& traj,
                                  const std::optional<SteadyState>& steady);

}  // namespace fraccoop
