#include "stiefelgeo/check.hpp"
#include "stiefelgeo/conjugate.hpp"
#include "stiefelgeo/curvature.hpp"
#include "stiefelgeo/json_out.hpp"
#include "stiefelgeo/loops.hpp"
#include "stiefelgeo/matexp.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
namespace sg = stiefelgeo;

namespace {

sg::TangentBlock tangent(const sg::Matrix& A, const sg::Matrix& B) { return sg::TangentBlock::at_identity(A, B); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Stiefel manifold geometry under the beta-metric family";

  py::register_exception<sg::Error>(m, "StiefelError", PyExc_ValueError);
  py::register_exception<sg::UnsupportedRegime>(m, "UnsupportedRegime", PyExc_ValueError);

  m.def("expm", &sg::expm, py::arg("X"));
  m.def("dexpm", &sg::dexpm, py::arg("X"), py::arg("Y"));
  m.def("skew_eigen_angles", &sg::skew_eigen_angles, py::arg("A"));

  m.def(
      "geodesic",
      [](double beta, const sg::Matrix& A, const sg::Matrix& B, double t) {
        return sg::geodesic(beta, tangent(A, B), t).U();
      },
      py::arg("beta"), py::arg("A"), py::arg("B"), py::arg("t"),
      "Point at time t of the geodesic from I_{n x p} with coordinates (A, B).");
  m.def(
      "geodesic_length",
      [](double beta, const sg::Matrix& A, const sg::Matrix& B, double t) {
        return sg::geodesic_length(beta, tangent(A, B), t);
      },
      py::arg("beta"), py::arg("A"), py::arg("B"), py::arg("t"));

  m.def("sectional_curvature", &sg::sectional_curvature_blocks, py::arg("beta"), py::arg("A1"), py::arg("B1"),
        py::arg("A2"), py::arg("B2"), "Curvature of a beta-orthonormal pair given by its blocks.");
  m.def(
      "curvature_bound",
      [](double beta, int n, int p) {
        const auto b = sg::curvature_bound(beta, n, p);
        return py::make_tuple(b.value, b.regime);
      },
      py::arg("beta"), py::arg("n"), py::arg("p"));
  m.def(
      "max_curvature_search",
      [](double beta, int n, int p, std::size_t samples, int ascent, std::uint64_t seed) {
        py::gil_scoped_release release;
        return sg::max_curvature_search(beta, n, p, samples, ascent, seed).best_value;
      },
      py::arg("beta"), py::arg("n"), py::arg("p"), py::arg("samples") = 10000, py::arg("ascent") = 4,
      py::arg("seed") = 0);

  m.def("loop_length_bound", &sg::loop_length_bound, py::arg("beta"));
  m.def(
      "canonical_loop",
      [](double beta, int n, int p, const std::string& kind) {
        const auto c = sg::canonical_loop(beta, n, p, sg::parse_loop_kind(kind));
        py::dict d;
        d["length"] = c.length;
        d["residual"] = c.residual;
        d["is_loop"] = c.is_loop;
        d["A"] = c.delta.A;
        d["B"] = c.delta.B;
        return d;
      },
      py::arg("beta"), py::arg("n"), py::arg("p"), py::arg("kind") = "b");

  m.def("t_beta_r", &sg::t_beta_r, py::arg("beta"));
  m.def("conjugate_radius_bounds", &sg::conjugate_radius_bounds, py::arg("beta"), py::arg("n"), py::arg("p"));
  m.def(
      "injectivity_radius",
      [](double beta, int n, int p) {
        const auto r = sg::injectivity_radius(beta, n, p);
        py::dict d;
        d["kind"] = sg::to_string(r.kind);
        d["value"] = r.value;
        d["lo"] = r.lo;
        d["hi"] = r.hi;
        d["case_label"] = r.case_label;
        d["conjectured"] = r.conjectured ? py::cast(*r.conjectured) : py::none();
        return d;
      },
      py::arg("beta"), py::arg("n"), py::arg("p"));
  m.def(
      "first_conjugate_time",
      [](double beta, const sg::Matrix& A, const sg::Matrix& B, double t_max) -> py::object {
        const auto r = sg::first_conjugate_time(beta, tangent(A, B), t_max);
        if (!r.t_first) return py::none();
        return py::cast(*r.t_first);
      },
      py::arg("beta"), py::arg("A"), py::arg("B"), py::arg("t_max"));
  m.def(
      "jacobi_field",
      [](double beta, const sg::Matrix& A, const sg::Matrix& B, const sg::Matrix& WA, const sg::Matrix& WB,
         double t) { return sg::jacobi_field(beta, tangent(A, B), tangent(WA, WB), t); },
      py::arg("beta"), py::arg("A"), py::arg("B"), py::arg("WA"), py::arg("WB"), py::arg("t"));
  m.def("on_conjugate_criterion", &sg::on_conjugate_criterion, py::arg("A"), py::arg("tol") = 1e-9);

  m.def(
      "run_checks",
      [](const std::string& suite, std::uint64_t seed) {
        sg::CheckReport r;
        {
          py::gil_scoped_release release;
          r = sg::run_checks(suite, seed);
        }
        return sg::dump_json(r.to_json());
      },
      py::arg("suite") = "all", py::arg("seed") = 0, "JSON report of the invariant suites.");
}
