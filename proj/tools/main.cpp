// Command-line driver: every subcommand reads a declarative run config,
// executes one solver pipeline, and writes deterministic artifacts into the
// output directory (same config + seed => byte-identical outputs).
#include <fmt/format.h>

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fraccoop/asymptotics.hpp"
#include "fraccoop/checks.hpp"
#include "fraccoop/config.hpp"
#include "fraccoop/eigenpair.hpp"
#include "fraccoop/epidemic.hpp"
#include "fraccoop/io.hpp"
#include "fraccoop/tolerances.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace fraccoop;

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  unsigned long long seed = 0;
  bool seed_given = false;
  int modes_override = 0;
  bool explore = false;
  std::string preset_name;
};

RunConfig load_and_override(const Options& opt, const char* command) {
  if (opt.config_path.empty())
    throw invalid_input(std::string("the ") + command +
                        " command needs --config <file>");
  RunConfig cfg = load_config(opt.config_path);
  if (opt.seed_given) cfg.seed = opt.seed;
  if (opt.modes_override > 0) cfg.n_modes = opt.modes_override;
  return cfg;
}

void require_sections(const RunConfig& cfg, const char* command, bool domain,
                      bool coupling, bool epidemic = false) {
  if (domain && !cfg.has_domain)
    throw invalid_input(std::string("domain: section required by the ") +
                        command + " command");
  if (coupling && !cfg.has_coupling_matrix)
    throw invalid_input(std::string("coupling: full a11/a12/a21/a22 table "
                                    "required by the ") +
                        command + " command");
  if (epidemic && !cfg.has_epidemic)
    throw invalid_input(std::string("epidemic: section required by the ") +
                        command + " command");
}

void write_summary(const Options& opt, json j) {
  write_file(opt.out_dir + "/run_summary.json", j.dump(2) + "\n");
}

json base_summary(const char* command, const RunConfig& cfg) {
  json j;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["n_modes"] = cfg.n_modes;
  return j;
}

// ----------------------------------------------------------------- eigen

void run_eigen(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "eigen");
  require_sections(cfg, "eigen", true, true);
  const EigenBasis basis = build_basis(cfg.domain, cfg.n_modes, cfg.resolution);
  const PrincipalEigenpair eig = principal_auto(basis, cfg.d, cfg.s, cfg.A);
  write_file(opt.out_dir + "/eigen.json", eigen_report_json(eig));
  if (opt.explore)
    write_file(opt.out_dir + "/profile.csv", profile_csv(basis.grid, eig.phi));
  json j = base_summary("eigen", cfg);
  j["lambda_p"] = eig.lambda_p;
  j["method"] = eig.method;
  j["residual"] = eig.residual;
  write_summary(opt, j);
}

// ----------------------------------------------------------------- sweeps

SweepPlan plan_from_config(const RunConfig& cfg) {
  SweepPlan plan;
  plan.domain = cfg.domain;
  plan.n_modes = cfg.n_modes;
  plan.resolution = cfg.resolution;
  plan.small_d_modes = cfg.small_d_modes;
  plan.A = cfg.A;
  plan.d = cfg.d;
  plan.s = cfg.s;
  plan.parameter = cfg.sweep_parameter;
  plan.values = cfg.sweep_values;
  plan.target = cfg.sweep_target;
  return plan;
}

EigenBasis sweep_row_basis(const SweepPlan& plan, std::size_t row) {
  if (plan.parameter == SweepParameter::domain_scale)
    return build_basis(scale_domain(plan.domain, plan.values[row]),
                       plan.n_modes, plan.resolution);
  const bool refined = plan.target == SweepTarget::min_principal &&
                       plan.small_d_modes > plan.n_modes && row < 2;
  if (refined) return build_basis(plan.domain, plan.small_d_modes, 0);
  return build_basis(plan.domain, plan.n_modes, plan.resolution);
}

void run_sweep(const Options& opt, const char* command) {
  const RunConfig cfg = load_and_override(opt, command);
  require_sections(cfg, command, true, true);
  if (!cfg.has_sweep)
    throw invalid_input(std::string("sweep: section required by the ") +
                        command + " command");
  const SweepPlan plan = plan_from_config(cfg);

  const std::string cmd(command);
  SweepResult res;
  std::string csv_name;
  if (cmd == "sweep-d") {
    if (plan.parameter != SweepParameter::d_joint &&
        plan.parameter != SweepParameter::d1 &&
        plan.parameter != SweepParameter::d2)
      throw invalid_input("sweep.parameter: sweep-d needs d_joint, d1, or d2");
    res = sweep_diffusion(plan);
    csv_name = "sweep_d.csv";
  } else if (cmd == "sweep-s") {
    if (plan.parameter != SweepParameter::s_joint)
      throw invalid_input("sweep.parameter: sweep-s needs s_joint");
    res = sweep_order(plan);
    csv_name = "sweep_s.csv";
  } else {
    if (plan.parameter != SweepParameter::domain_scale)
      throw invalid_input("sweep.parameter: sweep-domain needs domain_scale");
    res = sweep_domain_scale(plan);
    csv_name = "sweep_domain.csv";
  }

  write_file(opt.out_dir + "/" + csv_name, sweep_csv(res));
  if (opt.explore) {
    for (std::size_t i = 0; i < res.profiles.size(); ++i) {
      const EigenBasis basis = sweep_row_basis(plan, i);
      write_file(fmt::format("{}/profile_{:03}.csv", opt.out_dir, i),
                 profile_csv(basis.grid, res.profiles[i]));
    }
  }

  bool all_monotone = true;
  for (const SweepRow& row : res.rows) all_monotone &= row.monotone_ok;
  json j = base_summary(command, cfg);
  j["parameter"] = to_string(plan.parameter);
  j["target"] = to_string(plan.target);
  j["target_value"] = res.target_value;
  j["rows"] = res.rows.size();
  j["all_monotone"] = all_monotone;
  if (!res.lower_bounds.empty()) j["lower_bounds"] = res.lower_bounds;
  write_summary(opt, j);
}

// ------------------------------------------------------------ shape/mono

void run_shape(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "shape-check");
  require_sections(cfg, "shape-check", true, true);
  if (cfg.shape_d_values.empty())
    throw invalid_input("shape.d_values: required by the shape-check command");
  const ShapeReport rep = check_shape_properties(cfg.domain, cfg.n_modes,
                                                 cfg.A, cfg.s,
                                                 cfg.shape_d_values);
  write_file(opt.out_dir + "/shape.csv", shape_csv(rep));
  json j = base_summary("shape-check", cfg);
  j["monotone"] = rep.monotone;
  j["concave"] = rep.concave;
  j["strict"] = rep.strict;
  j["strictness_required"] = rep.strictness_required;
  j["worst_monotone_violation"] = rep.worst_monotone_violation;
  j["worst_concavity_violation"] = rep.worst_concavity_violation;
  write_summary(opt, j);
}

void run_domain_mono(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "domain-mono");
  require_sections(cfg, "domain-mono", false, true);
  if (!cfg.has_domains)
    throw invalid_input("domains: section required by the domain-mono command");
  const DomainMonotonicityReport rep = check_domain_monotonicity(
      cfg.A, cfg.d, cfg.s, cfg.inner_length, cfg.outer_length, cfg.n_modes);
  json j = base_summary("domain-mono", cfg);
  j["lambda_dirichlet_inner"] = rep.lambda_dirichlet_inner;
  j["lambda_dirichlet_outer"] = rep.lambda_dirichlet_outer;
  j["lambda_neumann_outer"] = rep.lambda_neumann_outer;
  j["chain_ok"] = rep.chain_ok;
  write_summary(opt, j);
}

void run_maxprinciple(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "maxprinciple");
  require_sections(cfg, "maxprinciple", true, true);
  const EigenBasis basis = build_basis(cfg.domain, cfg.n_modes, cfg.resolution);
  const MaxPrincipleReport rep =
      check_weak_max_principle(basis, cfg.d, cfg.s, cfg.A, cfg.trials,
                               cfg.seed);
  json j = base_summary("maxprinciple", cfg);
  j["lambda_p"] = rep.lambda_p;
  j["holds"] = rep.holds;
  j["borderline"] = rep.borderline;
  j["trials"] = rep.trials;
  j["min_solution_value"] = rep.min_solution_value;
  j["counterexample"] = rep.counterexample;
  if (rep.counterexample) {
    j["counterexample_rhs_min"] = rep.counterexample_rhs_min;
    j["counterexample_sol_min"] = rep.counterexample_sol_min;
  }
  write_summary(opt, j);
}

// --------------------------------------------------------------- endemic

void run_r0(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "r0");
  require_sections(cfg, "r0", true, false, true);
  const EigenBasis basis = build_basis(cfg.domain, cfg.n_modes, cfg.resolution);
  const double r0 = compute_R0(cfg.model, basis);
  const R0FixedPointReport fp = r0_fixed_point_check(cfg.model, basis, r0);
  json j = base_summary("r0", cfg);
  j["r0"] = r0;
  j["fixed_point_residual"] = fp.residual;
  j["s_below"] = fp.s_below;
  j["s_above"] = fp.s_above;
  j["bracketed"] = fp.bracketed;
  write_summary(opt, j);
}

void run_steady(const Options& opt) {
  const RunConfig cfg = load_and_override(opt, "steady");
  require_sections(cfg, "steady", true, false, true);
  const EigenBasis basis = build_basis(cfg.domain, cfg.n_modes, cfg.resolution);
  const SteadyState st = steady_state(cfg.model, basis, cfg.steady_tol);
  write_file(opt.out_dir + "/steady.csv", profile_csv(basis.grid, st.u1));
  json j = base_summary("steady", cfg);
  j["r0"] = st.r0;
  j["residual"] = st.residual;
  j["sandwich_gap"] = st.sandwich_gap;
  j["iterations"] = st.iterations;
  write_summary(opt, j);
}

const char* kind_name(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::persistence: return "persistence";
    case Classification::Kind::extinction: return "extinction";
    case Classification::Kind::borderline: return "borderline";
  }
  return "borderline";
}

void run_evolve(const Options& opt, bool classify) {
  const char* command = classify ? "classify" : "evolve";
  const RunConfig cfg = load_and_override(opt, command);
  require_sections(cfg, command, true, false, true);
  const EigenBasis basis = build_basis(cfg.domain, cfg.n_modes, cfg.resolution);

  GridPair u0{Eigen::ArrayXd::Constant(basis.grid.size(), cfg.u0[0]),
              Eigen::ArrayXd::Constant(basis.grid.size(), cfg.u0[1])};
  EvolveOptions evo;
  evo.store_every = cfg.store_every;
  const Trajectory traj = evolve(cfg.model, basis, u0, cfg.dt, cfg.t_final,
                                 evo);

  const double r0 = compute_R0(cfg.model, basis);
  std::optional<SteadyState> steady;
  if (r0 > 1.0 + tol::threshold_borderline)
    steady = steady_state(cfg.model, basis, cfg.steady_tol);
  std::optional<GridPair> ref;
  if (steady) ref = steady->u1;
  write_file(opt.out_dir + "/trajectory.csv", trajectory_csv(traj, ref));

  json j = base_summary(command, cfg);
  j["r0"] = r0;
  j["dt"] = traj.dt;
  j["T"] = cfg.t_final;
  j["scheme"] = traj.scheme;
  j["M1"] = traj.M1;
  j["M2"] = traj.M2;
  j["total_clip"] = traj.total_clip;
  j["stored_states"] = traj.states.size();
  if (classify) {
    const Classification cls = classify_long_time(cfg.model, basis, traj,
                                                  steady);
    j["kind"] = kind_name(cls.kind);
    j["distance"] = cls.distance;
    j["rate"] = cls.rate;
    j["lambda_p"] = cls.lambda_p;
  }
  write_summary(opt, j);
}

// ---------------------------------------------------------------- preset

int run_preset(const Options& opt) {
  unsigned long long seed = 42;
  if (!opt.config_path.empty()) seed = load_config(opt.config_path).seed;
  if (opt.seed_given) seed = opt.seed;

  if (opt.preset_name == "list") {
    for (const std::string& name : checks::check_names())
      std::printf("%s\n", name.c_str());
    return 0;
  }

  const checks::CheckResult res = checks::run_check(opt.preset_name, seed);
  json j;
  j["index"] = res.index;
  j["name"] = res.name;
  j["pass"] = res.pass;
  j["detail"] = res.detail;
  j["seed"] = seed;
  write_file(opt.out_dir + "/preset_result.json", j.dump(2) + "\n");
  std::printf("[%s] %s: %s\n", res.pass ? "PASS" : "FAIL", res.name.c_str(),
              res.detail.c_str());
  return res.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Spectral solver for cooperative systems with fractional "
               "diffusion: principal eigenvalues, asymptotic sweeps, and an "
               "endemic threshold model"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--config", opt.config_path, "run configuration file");
  app.add_option("--out", opt.out_dir, "output directory")
      ->capture_default_str();
  auto* seed_opt =
      app.add_option("--seed", opt.seed, "override the config seed");
  app.add_option("--modes", opt.modes_override,
                 "override discretization.n_modes");
  app.add_flag("--explore-concentration", opt.explore,
               "also write eigenfunction profiles (per sweep row)");

  app.add_subcommand("eigen", "principal eigenvalue of one instance");
  app.add_subcommand("sweep-d", "diffusion sweep toward a named limit");
  app.add_subcommand("sweep-s", "fractional-order sweep toward a named limit");
  app.add_subcommand("sweep-domain", "Dirichlet domain-scaling sweep");
  app.add_subcommand("shape-check",
                     "monotonicity/concavity scan of the eigenvalue in d");
  app.add_subcommand("domain-mono",
                     "domain-inclusion chain on nested intervals");
  app.add_subcommand("maxprinciple",
                     "randomized weak maximum-principle verification");
  app.add_subcommand("r0", "basic reproduction number and fixed-point check");
  app.add_subcommand("steady", "endemic steady state by monotone iteration");
  app.add_subcommand("evolve", "time integration of the endemic model");
  app.add_subcommand("classify",
                     "long-time classification of the endemic model");
  auto* preset =
      app.add_subcommand("preset", "run a named verification preset "
                                   "('preset list' prints all names)");
  preset->add_option("name", opt.preset_name, "preset name or 'list'")
      ->required();

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  opt.seed_given = seed_opt->count() > 0;

  try {
    if (cmd == "eigen")
      run_eigen(opt);
    else if (cmd == "sweep-d" || cmd == "sweep-s" || cmd == "sweep-domain")
      run_sweep(opt, cmd.c_str());
    else if (cmd == "shape-check")
      run_shape(opt);
    else if (cmd == "domain-mono")
      run_domain_mono(opt);
    else if (cmd == "maxprinciple")
      run_maxprinciple(opt);
    else if (cmd == "r0")
      run_r0(opt);
    else if (cmd == "steady")
      run_steady(opt);
    else if (cmd == "evolve")
      run_evolve(opt, false);
    else if (cmd == "classify")
      run_evolve(opt, true);
    else if (cmd == "preset")
      return run_preset(opt);
  } catch (const invalid_input& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  } catch (const numeric_failure& e) {
    json j;
    j["command"] = cmd;
    j["error"] = "numeric_failure";
    j["message"] = e.what();
    try {
      write_file(opt.out_dir + "/error.json", j.dump(2) + "\n");
    } catch (const invalid_input&) {
    }
    std::fprintf(stderr, "numeric failure in %s: %s\n", cmd.c_str(), e.what());
    return 2;
  }
  return 0;
}
