#pragma once

#include <optional>
#include <string>

#include "fraccoop/asymptotics.hpp"
#include "fraccoop/eigenpair.hpp"
#include "fraccoop/epidemic.hpp"

// Deterministic text emitters: fixed column order, shortest round-trip
// decimals, '\n' line endings. Rerunning a command with the same config and
// seed reproduces every output byte for byte.
namespace fraccoop {

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double x);

// Columns: param,lambda_p,target,gap,monotone_ok (one row per swept value).
std::string sweep_csv(const SweepResult& res);

// Columns: t,sup_u,sup_v,min_u,min_v,dist_to_steady (one row per stored
// checkpoint). Distance is the sup-norm gap to `steady_ref` when given,
// otherwise to zero.
std::string trajectory_csv(const Trajectory& traj,
                           const std::optional<GridPair>& steady_ref);

// Columns: x,u,v on intervals; x,y,u,v on rectangles.
std::string profile_csv(const Grid& grid, const GridPair& pair);

// Columns: d1,d2,lambda_p (one row per grid point of the shape scan).
std::string shape_csv(const ShapeReport& rep);

// JSON object with lambda_p, method, residual, positivity_margin,
// spectral_gap, nonconstancy_margin.
std::string eigen_report_json(const PrincipalEigenpair& pair);

// Writes content exactly as given, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

}  // namespace fraccoop
