#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "fraccoop_cli_test";

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = kRoot / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config(const std::string& name) {
  return std::string(CONFIG_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("eigen command reports the pinned constant-coupling values") {
  const fs::path out = fresh_dir("eigen");
  REQUIRE(run_cli("eigen --config " + config("eigen_constant_neumann.cfg") +
                  " --out " + (out / "n").string()) == 0);
  const nlohmann::json jn =
      nlohmann::json::parse(slurp(out / "n" / "eigen.json"));
  CHECK(std::abs(jn["lambda_p"].get<double>() - 1.0) < 1e-8);
  CHECK(jn["method"] == "symmetric");

  REQUIRE(run_cli("eigen --config " + config("eigen_constant_dirichlet.cfg") +
                  " --out " + (out / "d").string()) == 0);
  const nlohmann::json jd =
      nlohmann::json::parse(slurp(out / "d" / "eigen.json"));
  CHECK(std::abs(jd["lambda_p"].get<double>() - 2.0) < 1e-8);

  const nlohmann::json summary =
      nlohmann::json::parse(slurp(out / "n" / "run_summary.json"));
  CHECK(summary["command"] == "eigen");
  CHECK(summary["n_modes"] == 64);
}

TEST_CASE("domain sweep reproduces the scaling-law rows") {
  const fs::path out = fresh_dir("sweep_domain");
  REQUIRE(run_cli("sweep-domain --config " + config("sweep_domain.cfg") +
                  " --out " + out.string()) == 0);
  std::istringstream csv(slurp(out / "sweep_domain.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "param,lambda_p,target,gap,monotone_ok");

  std::vector<std::pair<double, double>> rows;
  while (std::getline(csv, line)) {
    double param = 0.0, lambda = 0.0;
    char flag[16] = {0};
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%*f,%*f,%15s", &param, &lambda,
                        flag) == 3);
    rows.emplace_back(param, lambda);
    CHECK(std::string(flag) == "true");
  }
  REQUIRE(rows.size() == 5);
  for (const auto& [l, lambda] : rows)
    CHECK(std::abs(lambda - (1.0 + 1.0 / l)) < 1e-8);
}

TEST_CASE("invalid configs exit with code 1 before writing artifacts") {
  const fs::path out = fresh_dir("invalid");
  const fs::path bad = out / "bad.cfg";
  {
    std::ofstream cfg(bad);
    cfg << "[domain]\nkind = interval\nlx = pi\nbc = neumann\n"
           "[coupling]\nd = [1, 1]\ns = [0.5, 0.5]\n"
           "a11 = [[0, 2.0]]\na12 = [[0, 0.5]]\na21 = [[0, -1.0]]\n"
           "a22 = [[0, 2.0]]\n";
  }
  CHECK(run_cli("eigen --config " + bad.string() + " --out " +
                (out / "r").string()) == 1);
  CHECK_FALSE(fs::exists(out / "r" / "eigen.json"));

  CHECK(run_cli("eigen --out " + (out / "r2").string()) == 1);  // no config
  CHECK(run_cli("preset unknown-check-name --out " + (out / "r3").string()) ==
        1);
}

TEST_CASE("numeric failures exit with code 2 and leave a diagnostic") {
  const fs::path out = fresh_dir("numeric");
  // Subcritical model: the steady-state command must refuse with the
  // non-existence diagnosis.
  CHECK(run_cli("steady --config " + config("classify_extinction.cfg") +
                " --out " + out.string()) == 2);
  const nlohmann::json err = nlohmann::json::parse(slurp(out / "error.json"));
  CHECK(err["error"] == "numeric_failure");
  CHECK(err["command"] == "steady");
}

TEST_CASE("identical config and seed give byte-identical outputs") {
  const fs::path out = fresh_dir("repeat");
  const std::string base = "eigen --config " + config("eigen_varying.cfg") +
                           " --explore-concentration --out ";
  REQUIRE(run_cli(base + (out / "a").string()) == 0);
  REQUIRE(run_cli(base + (out / "b").string()) == 0);
  for (const char* name : {"eigen.json", "run_summary.json", "profile.csv"})
    CHECK(slurp(out / "a" / name) == slurp(out / "b" / name));
}

TEST_CASE("preset runner executes a named check and records the result") {
  const fs::path out = fresh_dir("preset");
  REQUIRE(run_cli("preset constant-oracle --out " + out.string()) == 0);
  const nlohmann::json j =
      nlohmann::json::parse(slurp(out / "preset_result.json"));
  CHECK(j["name"] == "constant-oracle");
  CHECK(j["pass"] == true);
  CHECK(j["index"] == 1);
  CHECK(j["seed"] == 42);
}

TEST_CASE("endemic pipeline commands produce consistent summaries") {
  const fs::path out = fresh_dir("endemic");
  REQUIRE(run_cli("r0 --config " + config("r0.cfg") + " --out " +
                  (out / "r0").string()) == 0);
  const nlohmann::json r0 =
      nlohmann::json::parse(slurp(out / "r0" / "run_summary.json"));
  CHECK(std::abs(r0["r0"].get<double>() - 2.0) < 1e-8);
  CHECK(r0["bracketed"] == true);

  REQUIRE(run_cli("steady --config " + config("steady.cfg") + " --out " +
                  (out / "st").string()) == 0);
  const nlohmann::json st =
      nlohmann::json::parse(slurp(out / "st" / "run_summary.json"));
  CHECK(st["residual"].get<double>() < 1e-7);
  std::istringstream csv(slurp(out / "st" / "steady.csv"));
  std::string header;
  REQUIRE(std::getline(csv, header));
  CHECK(header == "x,u,v");

  REQUIRE(run_cli("evolve --config " + config("evolve.cfg") + " --out " +
                  (out / "ev").string()) == 0);
  std::istringstream traj(slurp(out / "ev" / "trajectory.csv"));
  REQUIRE(std::getline(traj, header));
  CHECK(header == "t,sup_u,sup_v,min_u,min_v,dist_to_steady");
  int rows = 0;
  std::string line;
  while (std::getline(traj, line)) ++rows;
  CHECK(rows == 51);  // t = 0 and every 100th of 5000 steps
}
