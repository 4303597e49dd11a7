#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "robinbif/acceptance.hpp"
#include "robinbif/branch_scenario.hpp"
#include "robinbif/errors.hpp"
#include "robinbif/spectrum.hpp"

namespace py = pybind11;
using namespace robinbif;

namespace {

// Structured results cross the boundary as JSON text; the package wrapper
// turns them into dicts.
std::string coeffs_json(int n, int k) {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  return to_json(double_coeffs_neumann(n, k, f, ratio_and_derivative(spec, 0.0).derivative)).dump();
}

std::string diagram_json(int n, int k, double nu, double mu0, int grid) {
  const auto spec = HomotopySpec::linear();
  const auto f = Nonlinearity::lambda_u2_u3();
  if (mu0 >= 0) {
    const auto p = simple_point(n, k, mu0, spec);
    const auto rc = simple_coeffs(p, f, GridOperator(grid, mu0, spec));
    return to_json(assemble_diagram(p, rc, f.odd_in_u(), 0.0)).dump();
  }
  const auto p = neumann_double_point(n, k);
  const auto rc = double_coeffs_neumann(n, k, f, ratio_and_derivative(spec, 0.0).derivative);
  return to_json(assemble_diagram(p, rc, f.odd_in_u(), nu)).dump();
}

py::list curves(double lambda_max, int samples) {
  py::list out;
  for (const auto& c : bifurcation_curves(lambda_max, HomotopySpec::linear(), samples)) {
    std::vector<double> mu, lam;
    for (const auto& s : c.samples) {
      mu.push_back(s.mu);
      lam.push_back(s.lambda);
    }
    py::dict d;
    d["n"] = c.n;
    d["base_mode"] = c.base_mode;
    d["parity"] = to_string(c.parity);
    d["mu"] = mu;
    d["lambda"] = lam;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bifurcation scenarios of a semilinear Robin problem on the square";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def(
      "wavenumber",
      [](double mu, int m_) { return solve_k(mu, m_, parity_of(m_), HomotopySpec::linear()).k; },
      py::arg("mu"), py::arg("m"), "Root k in (m, m+1) of the Robin wavenumber equation.");
  m.def(
      "eigenvalue",
      [](int n, int m_, double mu) {
        return n * n + std::pow(solve_k(mu, m_, parity_of(m_), HomotopySpec::linear()).k, 2);
      },
      py::arg("n"), py::arg("m"), py::arg("mu"));
  m.def("curves", &curves, py::arg("lambda_max"), py::arg("samples") = 101);
  m.def("_coefficients", &coeffs_json, py::arg("n"), py::arg("k"));
  m.def("_diagram", &diagram_json, py::arg("n"), py::arg("k"), py::arg("nu") = 0.01, py::arg("mu0") = -1.0,
        py::arg("grid") = 64);
  m.def(
      "secondary_loci",
      [](int n, int k, int nu_sign) {
        const auto rc = double_coeffs_neumann(n, k, Nonlinearity::lambda_u2_u3(), 1.0);
        std::vector<std::pair<double, std::string>> out;
        for (const auto& l : secondary_loci(rc, nu_sign)) out.emplace_back(l.ratio, l.pure);
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("nu_sign") = 1);
  m.def(
      "spectrum_csv",
      [](double lambda_max, int samples) {
        std::ostringstream os;
        write_spectrum_csv(os, bifurcation_curves(lambda_max, HomotopySpec::linear(), samples));
        return os.str();
      },
      py::arg("lambda_max"), py::arg("samples") = 101);
}
