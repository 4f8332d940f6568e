#include "fraccoop/io.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>

#include "fraccoop/errors.hpp"
#include "json.hpp"

namespace fraccoop {

std::string format_double(double x) { return fmt::format("{}", x); }

std::string sweep_csv(const SweepResult& res) {
  std::string out = "param,lambda_p,target,gap,monotone_ok\n";
  for (const SweepRow& row : res.rows)
    out += fmt::format("{},{},{},{},{}\n", row.param, row.lambda_p, row.target,
                       row.gap, row.monotone_ok ? "true" : "false");
  return out;
}

std::string trajectory_csv(const Trajectory& traj,
                           const std::optional<GridPair>& steady_ref) {
  std::string out = "t,sup_u,sup_v,min_u,min_v,dist_to_steady\n";
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const GridPair& st = traj.states[k];
    double dist;
    if (steady_ref) {
      dist = std::max((st.u - steady_ref->u).abs().maxCoeff(),
                      (st.v - steady_ref->v).abs().maxCoeff());
    } else {
      dist = std::max(st.u.abs().maxCoeff(), st.v.abs().maxCoeff());
    }
    out += fmt::format("{},{},{},{},{},{}\n", traj.state_times[k],
                       st.u.maxCoeff(), st.v.maxCoeff(), st.u.minCoeff(),
                       st.v.minCoeff(), dist);
  }
  return out;
}

std::string profile_csv(const Grid& grid, const GridPair& pair) {
  const bool two_d = grid.ry > 1;
  std::string out = two_d ? "x,y,u,v\n" : "x,u,v\n";
  for (int p = 0; p < grid.size(); ++p) {
    if (two_d)
      out += fmt::format("{},{},{},{}\n", grid.x[p], grid.y[p], pair.u[p],
                         pair.v[p]);
    else
      out += fmt::format("{},{},{}\n", grid.x[p], pair.u[p], pair.v[p]);
  }
  return out;
}

std::string shape_csv(const ShapeReport& rep) {
  std::string out = "d1,d2,lambda_p\n";
  for (std::size_t i = 0; i < rep.d_values.size(); ++i)
    for (std::size_t j = 0; j < rep.d_values.size(); ++j)
      out += fmt::format("{},{},{}\n", rep.d_values[i], rep.d_values[j],
                         rep.lambda[i][j]);
  return out;
}

std::string eigen_report_json(const PrincipalEigenpair& pair) {
  nlohmann::json j;
  j["lambda_p"] = pair.lambda_p;
  j["method"] = pair.method;
  j["residual"] = pair.residual;
  j["positivity_margin"] = pair.positivity_margin;
  j["spectral_gap"] = pair.spectral_gap;
  j["nonconstancy_margin"] = {pair.nonconstancy_margin[0],
                              pair.nonconstancy_margin[1]};
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw invalid_input("cannot open output file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw invalid_input("failed writing output file: " + path);
}

}  // namespace fraccoop
