// Python bindings for the main operations: mode eigenvalues, spectral
// projection, principal eigenvalues, the reproduction number, steady states,
// and the named verification checks.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fraccoop/basis.hpp"
#include "fraccoop/checks.hpp"
#include "fraccoop/eigenpair.hpp"
#include "fraccoop/epidemic.hpp"
#include "fraccoop/field.hpp"

namespace py = pybind11;
using namespace fraccoop;

namespace {

Domain make_domain(const std::string& kind, double lx, double ly,
                   const std::string& bc_name) {
  BC bc;
  if (bc_name == "neumann")
    bc = BC::neumann;
  else if (bc_name == "dirichlet")
    bc = BC::dirichlet;
  else
    throw invalid_input("bc must be 'neumann' or 'dirichlet'");
  if (kind == "interval") return make_interval(lx, bc);
  if (kind == "rectangle") return make_rectangle(lx, ly, bc);
  throw invalid_input("kind must be 'interval' or 'rectangle'");
}

// A field literal is either a number (constant) or a cosine table:
// [[k, amp], ...] on intervals, [[kx, ky, amp], ...] on rectangles.
ScalarField to_field(py::handle obj) {
  if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj))
    return constant_field(obj.cast<double>());
  ScalarField f;
  for (py::handle term : obj.cast<py::sequence>()) {
    auto row = term.cast<py::sequence>();
    CosineTerm ct;
    if (py::len(row) == 2) {
      ct.kx = row[0].cast<int>();
      ct.amp = row[1].cast<double>();
    } else if (py::len(row) == 3) {
      ct.kx = row[0].cast<int>();
      ct.ky = row[1].cast<int>();
      ct.amp = row[2].cast<double>();
    } else {
      throw invalid_input("cosine terms are [k, amp] or [kx, ky, amp]");
    }
    f.terms.push_back(ct);
  }
  return f;
}

MatrixField to_matrix_field(py::handle obj) {
  auto rows = obj.cast<py::sequence>();
  if (py::len(rows) != 2) throw invalid_input("coupling must be 2x2");
  auto r0 = rows[0].cast<py::sequence>();
  auto r1 = rows[1].cast<py::sequence>();
  if (py::len(r0) != 2 || py::len(r1) != 2)
    throw invalid_input("coupling must be 2x2");
  MatrixField A;
  A.a11 = to_field(r0[0]);
  A.a12 = to_field(r0[1]);
  A.a21 = to_field(r1[0]);
  A.a22 = to_field(r1[1]);
  return A;
}

EpidemicModel to_model(py::handle a, py::handle b, Pair2 d, Pair2 s,
                       const std::string& H, double H_p, const std::string& G,
                       double G_p, double G_kappa) {
  EpidemicModel m;
  m.a = to_field(a);
  m.b = to_field(b);
  m.H = make_nonlinearity(H, H_p);
  m.G = make_nonlinearity(G, G_p, G_kappa);
  m.d = d;
  m.s = s;
  return m;
}

std::vector<double> to_vec(const Eigen::ArrayXd& a) {
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(fraccoop, m) {
  m.doc() =
      "Spectral solver for 2x2 cooperative systems with fractional "
      "diffusion: principal eigenvalues, asymptotic limits, and an endemic "
      "threshold model";

  py::register_exception<invalid_input>(m, "InvalidInput");
  py::register_exception<numeric_failure>(m, "NumericFailure");

  m.def(
      "mode_eigenvalues",
      [](const std::string& kind, double lx, double ly, const std::string& bc,
         int n_modes) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        std::vector<double> mu;
        for (const Mode& mode : basis.modes) mu.push_back(mode.mu);
        return mu;
      },
      py::arg("kind"), py::arg("lx"), py::arg("ly") = 0.0,
      py::arg("bc") = "neumann", py::arg("n_modes") = 16,
      "Laplacian eigenvalues of the first n_modes basis modes");

  m.def(
      "grid_points",
      [](const std::string& kind, double lx, double ly, const std::string& bc,
         int n_modes) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        py::dict out;
        out["x"] = to_vec(basis.grid.x);
        if (basis.grid.ry > 1) out["y"] = to_vec(basis.grid.y);
        out["w"] = to_vec(basis.grid.w);
        return out;
      },
      py::arg("kind"), py::arg("lx"), py::arg("ly") = 0.0,
      py::arg("bc") = "neumann", py::arg("n_modes") = 16,
      "Quadrature nodes and weights of the basis grid");

  m.def(
      "project",
      [](const std::string& kind, double lx, const std::string& bc,
         int n_modes, const std::vector<double>& values, double ly) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        Eigen::ArrayXd v =
            Eigen::Map<const Eigen::ArrayXd>(values.data(), values.size());
        return to_vec(project(v, basis));
      },
      py::arg("kind"), py::arg("lx"), py::arg("bc"), py::arg("n_modes"),
      py::arg("values"), py::arg("ly") = 0.0,
      "Spectral coefficients of grid values");

  m.def(
      "synthesize",
      [](const std::string& kind, double lx, const std::string& bc,
         int n_modes, const std::vector<double>& coeffs, double ly) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        Eigen::ArrayXd c =
            Eigen::Map<const Eigen::ArrayXd>(coeffs.data(), coeffs.size());
        return to_vec(synthesize(c, basis));
      },
      py::arg("kind"), py::arg("lx"), py::arg("bc"), py::arg("n_modes"),
      py::arg("coeffs"), py::arg("ly") = 0.0,
      "Grid values from spectral coefficients");

  m.def(
      "perron",
      [](double a11, double a12, double a21, double a22) {
        Eigen::Matrix2d C;
        C << a11, a12, a21, a22;
        const Perron2x2 p = perron_2x2(C);
        return py::make_tuple(p.lambda_bar,
                              py::make_tuple(p.eigvec[0], p.eigvec[1]));
      },
      py::arg("a11"), py::arg("a12"), py::arg("a21"), py::arg("a22"),
      "Bottom eigenvalue and positive eigenvector of a cooperative 2x2 "
      "matrix");

  m.def(
      "principal_eigenvalue",
      [](const std::string& kind, double lx, py::handle A, double ly,
         const std::string& bc, int n_modes, std::pair<double, double> d,
         std::pair<double, double> s) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        const PrincipalEigenpair eig =
            principal_auto(basis, {d.first, d.second}, {s.first, s.second},
                           to_matrix_field(A));
        py::dict out;
        out["lambda_p"] = eig.lambda_p;
        out["method"] = eig.method;
        out["residual"] = eig.residual;
        out["positivity_margin"] = eig.positivity_margin;
        out["spectral_gap"] = eig.spectral_gap;
        out["u"] = to_vec(eig.phi.u);
        out["v"] = to_vec(eig.phi.v);
        return out;
      },
      py::arg("kind"), py::arg("lx"), py::arg("A"), py::arg("ly") = 0.0,
      py::arg("bc") = "neumann", py::arg("n_modes") = 64,
      py::arg("d") = std::pair<double, double>{1.0, 1.0},
      py::arg("s") = std::pair<double, double>{0.5, 0.5},
      "Principal eigenvalue and positive eigenfunction of the coupled "
      "operator");

  m.def(
      "diffusion_gradient",
      [](const std::string& kind, double lx, py::handle A, double ly,
         const std::string& bc, int n_modes, std::pair<double, double> d,
         std::pair<double, double> s) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        const Pair2 dd = {d.first, d.second};
        const Pair2 ss = {s.first, s.second};
        const PrincipalEigenpair eig =
            principal_auto(basis, dd, ss, to_matrix_field(A));
        const Pair2 g = grad_lambda_d(basis, dd, ss, eig);
        return std::pair<double, double>{g[0], g[1]};
      },
      py::arg("kind"), py::arg("lx"), py::arg("A"), py::arg("ly") = 0.0,
      py::arg("bc") = "neumann", py::arg("n_modes") = 64,
      py::arg("d") = std::pair<double, double>{1.0, 1.0},
      py::arg("s") = std::pair<double, double>{0.5, 0.5},
      "Partial derivatives of the principal eigenvalue in (d1, d2)");

  m.def(
      "reproduction_number",
      [](const std::string& kind, double lx, py::handle a, py::handle b,
         double ly, const std::string& bc, int n_modes,
         std::pair<double, double> d, std::pair<double, double> s,
         const std::string& H, double H_p, const std::string& G, double G_p,
         double G_kappa) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        return compute_R0(to_model(a, b, {d.first, d.second},
                                   {s.first, s.second}, H, H_p, G, G_p,
                                   G_kappa),
                          basis);
      },
      py::arg("kind"), py::arg("lx"), py::arg("a"), py::arg("b"),
      py::arg("ly") = 0.0, py::arg("bc") = "neumann", py::arg("n_modes") = 64,
      py::arg("d") = std::pair<double, double>{1.0, 1.0},
      py::arg("s") = std::pair<double, double>{0.5, 0.5},
      py::arg("H") = "log_saturating", py::arg("H_p") = 1.0,
      py::arg("G") = "michaelis_menten", py::arg("G_p") = 1.0,
      py::arg("G_kappa") = 1.0,
      "Basic reproduction number of the endemic model");

  m.def(
      "steady_state",
      [](const std::string& kind, double lx, py::handle a, py::handle b,
         double ly, const std::string& bc, int n_modes,
         std::pair<double, double> d, std::pair<double, double> s,
         const std::string& H, double H_p, const std::string& G, double G_p,
         double G_kappa, double tol) {
        const EigenBasis basis =
            build_basis(make_domain(kind, lx, ly, bc), n_modes);
        const SteadyState st = steady_state(
            to_model(a, b, {d.first, d.second}, {s.first, s.second}, H, H_p,
                     G, G_p, G_kappa),
            basis, tol);
        py::dict out;
        out["r0"] = st.r0;
        out["residual"] = st.residual;
        out["sandwich_gap"] = st.sandwich_gap;
        out["iterations"] = st.iterations;
        out["u"] = to_vec(st.u1.u);
        out["v"] = to_vec(st.u1.v);
        return out;
      },
      py::arg("kind"), py::arg("lx"), py::arg("a"), py::arg("b"),
      py::arg("ly") = 0.0, py::arg("bc") = "neumann", py::arg("n_modes") = 64,
      py::arg("d") = std::pair<double, double>{1.0, 1.0},
      py::arg("s") = std::pair<double, double>{0.5, 0.5},
      py::arg("H") = "log_saturating", py::arg("H_p") = 1.0,
      py::arg("G") = "michaelis_menten", py::arg("G_p") = 1.0,
      py::arg("G_kappa") = 1.0, py::arg("tol") = 1e-8,
      "Endemic steady state by monotone iteration (supercritical models)");

  m.def("check_names", &checks::check_names,
        "Names of the built-in verification checks");

  m.def(
      "run_check",
      [](const std::string& name, unsigned long long seed) {
        const checks::CheckResult res = checks::run_check(name, seed);
        py::dict out;
        out["index"] = res.index;
        out["name"] = res.name;
        out["pass"] = res.pass;
        out["detail"] = res.detail;
        return out;
      },
      py::arg("name"), py::arg("seed") = 42ULL,
      "Run one named verification check");
}
