#pragma once

// Every numeric threshold used by the library's self-checks and by the
// acceptance suite lives here, so tests and CLI presets agree by construction.
namespace fraccoop::tol {

// basis hygiene
inline constexpr double gram_interval = 1e-10;     // max |Gram - I|, interval bases
inline constexpr double gram_rectangle = 1e-8;     // max |Gram - I|, rectangle bases
inline constexpr double roundtrip = 1e-11;         // project(synthesize(c)) vs c
inline constexpr double quad_measure_rel = 1e-12;  // sum of weights vs |Omega|
inline constexpr double mu_scaling_rel = 1e-12;    // mu(l*Omega) vs mu(Omega)/l^2
inline constexpr double neumann_trace = 1e-6;      // one-sided FD of coefficient fields

// principal eigenvalue
inline constexpr double eigen_oracle = 1e-8;        // closed-form instances
inline constexpr double cross_algorithm = 1e-6;     // symmetric vs Krein-Rutman path
inline constexpr double kr_radius_unit = 1e-8;      // |r(K_{lambda_p}) - 1|
inline constexpr double rayleigh_slack = 1e-10;     // quotient >= lambda_p - slack
inline constexpr double residual_max = 1e-8;        // eigenpair residual bound
inline constexpr double stale_residual = 1e-6;      // gradient refuses worse pairs
inline constexpr double coeff_roundoff = 1e-14;     // coefficients below this are 0
inline constexpr double grad_fd_step = 1e-4;        // central difference step in d
inline constexpr double grad_rel = 1e-4;            // analytic vs FD relative error
inline constexpr double certificate = 1e-8;         // certify_bound at phi = phi_1
inline constexpr double shift_equivariance = 1e-10; // lambda_p(A + cI) - lambda_p(A) - c
inline constexpr double simplicity_gap = 1e-10;     // spectral gap must exceed this

// iteration controls
inline constexpr double power_tol = 1e-12;   // radius increment tolerance
inline constexpr int power_max_iter = 10000; // power iteration cap
inline constexpr double bisect_tol = 1e-10;  // Krein-Rutman bisection on lambda
inline constexpr double sign_mean_tie = 1e-13;

// sweeps / structural checks
inline constexpr double shape_slack = 1e-10;          // monotonicity + concavity slack
inline constexpr double strict_nonconstancy = 1e-6;   // margin that forces strict increase
inline constexpr double d_to_zero_gap = 5e-2;         // gap at d = 1e-6, N = 256
inline constexpr double d_to_inf_gap = 1e-3;          // gap at d = 1e6 (Neumann)
inline constexpr double s_to_one_gap = 1e-2;          // gap at s = 0.999
inline constexpr double s0_target_agreement = 1e-8;   // limit operator at two d values
inline constexpr double domain_scaling = 1e-8;        // closed form 1 + 1/l
inline constexpr double bound_slack = 1e-10;          // certified lower bounds (can be tight)
inline constexpr double domain_mono = 1e-8;           // 3 >= 2 >= 1 chain values
inline constexpr double chain_slack = 1e-10;          // inequality slack in the chain

// maximum principle
inline constexpr double maxprin_negativity = 1e-10;  // solutions must exceed -this
inline constexpr double lambda_borderline = 1e-12;   // |lambda_p| below -> borderline

// epidemic / R0
inline constexpr double r0_oracle = 1e-8;          // constant-coefficient closed form
inline constexpr double r0_fixed_point = 1e-6;     // |s(B + F/R0)|
inline constexpr double threshold_borderline = 1e-6; // skip |lambda_p| below in sign sweep
inline constexpr double steady_oracle = 1e-8;      // scalar fixed-point comparison
inline constexpr double sandwich_gap = 1e-6;       // up/down iteration agreement
inline constexpr double monotone_step = 1e-10;     // per-step monotonicity slack
inline constexpr double sub_eps_min = 1e-12;       // halving floor for sub-solutions

// dynamics
inline constexpr double ode_oracle = 1e-4;       // ETD1 vs RK4 reduction at T = 5
inline constexpr double persistence_dist = 1e-3; // distance to steady state by T = 80
inline constexpr double extinction_factor = 0.9; // measured rate >= factor * lambda_p
inline constexpr double order_preservation = 1e-8;
inline constexpr double state_negativity = 1e-8;  // invariant floor for trajectories
inline constexpr double clip_threshold = 1e-12;   // silently zero values above -this
inline constexpr double steady_fixed = 1e-6;      // trajectory launched at steady state
}  // namespace fraccoop::tol
