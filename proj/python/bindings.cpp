#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sds/action.hpp"
#include "sds/errors.hpp"
#include "sds/localfield.hpp"
#include "sds/oracle.hpp"
#include "sds/quantize.hpp"
#include "sds/specfun.hpp"
#include "sds/surface.hpp"

namespace py = pybind11;
using namespace sds;

PYBIND11_MODULE(_sds, m) {
  m.doc() = "Semiclassical spectra of a point interaction on a surface of revolution";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<SurfaceProfile>(m, "SurfaceProfile")
      .def(py::init([](double z0, double z1, std::vector<double> omega) {
             return SurfaceProfile(z0, z1, ProfilePolynomial(std::move(omega)));
           }),
           py::arg("z0"), py::arg("z1"), py::arg("omega"))
      .def_static("round_sphere", &SurfaceProfile::round_sphere)
      .def_property_readonly("z0", &SurfaceProfile::z0)
      .def_property_readonly("z1", &SurfaceProfile::z1)
      .def("f", [](const SurfaceProfile& p, double z) { return profile_value(p, z); }, py::arg("z"));

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("passed", &ValidationReport::passed)
      .def_readonly("min_omega", &ValidationReport::min_omega)
      .def_readonly("violation_at", &ValidationReport::violation_at)
      .def_readonly("messages", &ValidationReport::messages);
  m.def("validate_profile", &validate_profile, py::arg("profile"));
  m.def("meridian_length", &meridian_length, py::arg("profile"));
  m.def(
      "half_action", [](const SurfaceProfile& p, double E) { return half_action(p, E).J; }, py::arg("profile"),
      py::arg("E"));

  m.def("bessel_j1", &bessel_j1, py::arg("x"));
  m.def("bessel_y1", &bessel_y1, py::arg("x"));

  py::enum_<QuantizationMode>(m, "QuantizationMode")
      .value("paper", QuantizationMode::paper)
      .value("derived", QuantizationMode::derived);

  py::class_<SpectralParams>(m, "SpectralParams")
      .def(py::init([](double h, double alpha, double E_min, double E_max) {
             return SpectralParams{h, alpha, 0, E_min, E_max};
           }),
           py::arg("h"), py::arg("alpha") = 0.0, py::arg("E_min") = 1e-3, py::arg("E_max") = 1.0)
      .def_readwrite("h", &SpectralParams::h)
      .def_readwrite("alpha", &SpectralParams::alpha)
      .def_readwrite("E_min", &SpectralParams::E_min)
      .def_readwrite("E_max", &SpectralParams::E_max);

  py::class_<SpectralEntry>(m, "SpectralEntry")
      .def_readonly("k", &SpectralEntry::k)
      .def_readonly("phase_index", &SpectralEntry::phase_index)
      .def_readonly("E", &SpectralEntry::E)
      .def_readonly("phase", &SpectralEntry::phase)
      .def_readonly("residual", &SpectralEntry::residual);
  m.def(
      "enumerate_spectrum",
      [](const SurfaceProfile& p, const SpectralParams& params, QuantizationMode mode) {
        return enumerate_spectrum(p, params, mode).entries;
      },
      py::arg("profile"), py::arg("params"), py::arg("mode") = QuantizationMode::derived);
  m.def(
      "solve_branch",
      [](const SurfaceProfile& p, const SpectralParams& params, int k, QuantizationMode mode) -> std::optional<double> {
        const auto r = solve_branch(p, params, k, mode);
        if (!r) return std::nullopt;
        return r->E;
      },
      py::arg("profile"), py::arg("params"), py::arg("k"), py::arg("mode") = QuantizationMode::derived);

  py::class_<CouplingRegime>(m, "CouplingRegime")
      .def_property_readonly("tag", [](const CouplingRegime& r) { return to_string(r.tag); })
      .def_readonly("ratio", &CouplingRegime::ratio)
      .def_readonly("paper_offset", &CouplingRegime::paper_offset)
      .def_readonly("derived_offset", &CouplingRegime::derived_offset);
  m.def("classify_regime", &classify_regime, py::arg("params"), py::arg("C") = 1.0, py::arg("epsilon") = 0.1);

  py::class_<BoundaryData>(m, "BoundaryData")
      .def_readonly("a", &BoundaryData::a)
      .def_readonly("b", &BoundaryData::b)
      .def_readonly("residual", &BoundaryData::residual);
  m.def(
      "shoot", [](const SurfaceProfile& p, const SpectralParams& params, double E) { return shoot(p, params, E); },
      py::arg("profile"), py::arg("params"), py::arg("E"));

  py::class_<OracleEigenvalue>(m, "OracleEigenvalue")
      .def_readonly("E", &OracleEigenvalue::E)
      .def_readonly("mismatch_slope", &OracleEigenvalue::mismatch_slope)
      .def_readonly("E_lo", &OracleEigenvalue::E_lo)
      .def_readonly("E_hi", &OracleEigenvalue::E_hi);
  m.def(
      "oracle_spectrum",
      [](const SurfaceProfile& p, const SpectralParams& params) { return oracle_spectrum(p, params); },
      py::arg("profile"), py::arg("params"));
  m.def("sphere_exact_spectrum", &sphere_exact_spectrum, py::arg("params"));
  m.def(
      "indicial_exponents",
      [](int mm, const std::string& convention) {
        return indicial_exponents(mm, convention == "paper" ? IndicialConvention::paper : IndicialConvention::direct);
      },
      py::arg("m"), py::arg("convention") = "direct");

  py::class_<GluedEigenfunction>(m, "GluedEigenfunction")
      .def_readonly("z", &GluedEigenfunction::grid)
      .def_readonly("values", &GluedEigenfunction::values)
      .def_readonly("matching_residual", &GluedEigenfunction::matching_residual)
      .def_readonly("cut_inner", &GluedEigenfunction::cut_inner)
      .def_readonly("cut_outer", &GluedEigenfunction::cut_outer)
      .def_readonly("warning", &GluedEigenfunction::warning)
      .def_readonly("E", &GluedEigenfunction::E);
  m.def(
      "glue",
      [](const SurfaceProfile& p, const SpectralParams& params, double E, QuantizationMode mode) {
        return glue(p, params, E, mode);
      },
      py::arg("profile"), py::arg("params"), py::arg("E"), py::arg("mode") = QuantizationMode::derived);
  m.def("radial_residual", &radial_residual, py::arg("profile"), py::arg("params"), py::arg("E"),
        py::arg("eigenfunction"));
}
