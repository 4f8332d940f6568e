#pragma once
#include <string>
#include <vector>

#include "fraccoop/asymptotics.hpp"
#include "fraccoop/epidemic.hpp"

namespace fraccoop {

// Typed run configuration parsed from the flat sectioned key-value format
// (see README for the schema).  Sections are optional at parse time; each
// command checks that the sections it needs are present.
struct RunConfig {
  // [domain]
  Domain domain;
  bool has_domain = false;

  // [discretization]
  int n_modes = 64;
  int resolution = 0;      // 0 = smallest admissible grid
  int small_d_modes = 256; // refinement for vanishing-diffusion sweeps

  // [coupling]
  Pair2 d{1.0, 1.0};
  Pair2 s{0.5, 0.5};
  MatrixField A;
  bool has_coupling_matrix = false;

  // [epidemic]  (d, s mirrored from [coupling])
  EpidemicModel model;
  bool has_epidemic = false;

  // [sweep]
  bool has_sweep = false;
  SweepParameter sweep_parameter = SweepParameter::d_joint;
  std::vector<double> sweep_values;
  SweepTarget sweep_target = SweepTarget::min_principal;

  // [shape]
  std::vector<double> shape_d_values;

  // [domains]
  bool has_domains = false;
  double inner_length = 0.0;
  double outer_length = 0.0;

  // [maxprinciple]
  int trials = 20;

  // [evolve]
  double dt = 1e-3;
  double t_final = 5.0;
  Pair2 u0{0.1, 0.1};
  int store_every = 100;

  // [steady]
  double steady_tol = 1e-8;

  // [run]
  unsigned long long seed = 42;
};

// Parses and validates the text.  Every problem is reported; the exception
// message carries one line per error, each prefixed with its field path
// (e.g. "coupling.a12: ...").
RunConfig parse_config(const std::string& text);

// Reads the file and parses it.  Throws invalid_input when unreadable.
RunConfig load_config(const std::string& path);

}  // namespace fraccoop
