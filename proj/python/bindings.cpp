#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casimir/bhd.hpp"
#include "casimir/errors.hpp"
#include "casimir/imagesum.hpp"
#include "casimir/oracle.hpp"
#include "casimir/spectral.hpp"
#include "casimir/units.hpp"
#include "cli.hpp"

namespace py = pybind11;
using namespace casimir;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Casimir cavity spectral densities and balanced homodyne detection";

  static py::exception<NumericalGuardError> guard(m, "NumericalGuardError", PyExc_ArithmeticError);
  static py::exception<LightConeProximity> light_cone(m, "LightConeProximity", guard.ptr());
  static py::exception<QuadratureFailure> quadrature(m, "QuadratureFailure", guard.ptr());
  static py::exception<ExtrapolationDivergence> divergence(m, "ExtrapolationDivergence",
                                                           guard.ptr());
  static py::exception<TailTooLarge> tail(m, "TailTooLarge", guard.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const LightConeProximity& e) {
      py::object exc = py::reinterpret_borrow<py::object>(light_cone.ptr())(e.what());
      exc.attr("image_index") = e.image_index();
      exc.attr("distance") = std::string(1, e.distance());
      PyErr_SetObject(light_cone.ptr(), exc.ptr());
    } catch (const QuadratureFailure& e) {
      quadrature(e.what());
    } catch (const ExtrapolationDivergence& e) {
      divergence(e.what());
    } catch (const TailTooLarge& e) {
      tail(e.what());
    } catch (const NumericalGuardError& e) {
      guard(e.what());
    }
  });

  py::class_<CavityGeometry>(m, "CavityGeometry")
      .def(py::init<double>(), py::arg("a") = 1.0)
      .def_property_readonly("a", &CavityGeometry::a)
      .def_property_readonly("period", &CavityGeometry::period);

  py::class_<FieldPoint>(m, "FieldPoint")
      .def(py::init([](double x, double y) { return FieldPoint{x, y}; }), py::arg("x"),
           py::arg("y") = 0.0)
      .def_readwrite("x", &FieldPoint::x)
      .def_readwrite("y", &FieldPoint::y);

  py::class_<TruncationPolicy>(m, "TruncationPolicy")
      .def(py::init([](int N, bool accelerate, bool pair_symmetric) {
             return TruncationPolicy{N, accelerate, pair_symmetric};
           }),
           py::arg("N") = kDefaultTerms, py::arg("accelerate") = false,
           py::arg("pair_symmetric") = true)
      .def_readwrite("N", &TruncationPolicy::N)
      .def_readwrite("accelerate", &TruncationPolicy::accelerate)
      .def_readwrite("pair_symmetric", &TruncationPolicy::pair_symmetric);

  py::class_<SpectralSample>(m, "SpectralSample")
      .def_readonly("omega", &SpectralSample::omega)
      .def_readonly("value", &SpectralSample::value)
      .def_readonly("err", &SpectralSample::err)
      .def_readonly("terms", &SpectralSample::terms);

  py::class_<LOKernel>(m, "LOKernel")
      .def(py::init([](double omega_lo, double width, double amplitude) {
             LOKernel k;
             k.omega_lo = omega_lo;
             k.width = width;
             k.amplitude = amplitude;
             return k;
           }),
           py::arg("omega_lo") = 2.0 * kPi, py::arg("width") = 2.0 * kPi / 100.0,
           py::arg("amplitude") = 1.0)
      .def_readwrite("omega_lo", &LOKernel::omega_lo)
      .def_readwrite("width", &LOKernel::width)
      .def_readwrite("amplitude", &LOKernel::amplitude)
      .def("__call__", &LOKernel::operator())
      .def("kappa", &LOKernel::kappa);

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init([](FieldPoint d1, FieldPoint d2, double calibration) {
             return DetectorConfig{d1, d2, calibration};
           }),
           py::arg("diode1"), py::arg("diode2"), py::arg("calibration") = 1.0)
      .def_readwrite("diode1", &DetectorConfig::diode1)
      .def_readwrite("diode2", &DetectorConfig::diode2)
      .def_readwrite("calibration", &DetectorConfig::calibration);

  const CavityGeometry unit;
  const TruncationPolicy policy;

  m.def("q_kernel", &q_kernel, py::arg("u"));
  m.def("w_kernel", &w_kernel, py::arg("u"));
  m.def("sigma_yy", &sigma_yy, py::arg("omega"), py::arg("point"), py::arg("geometry") = unit,
        py::arg("policy") = policy);
  m.def("sigma_yy_diag", &sigma_yy_diag, py::arg("omega"), py::arg("x"),
        py::arg("geometry") = unit, py::arg("policy") = policy);
  m.def("sigma_vacuum", &sigma_vacuum, py::arg("omega"), py::arg("y") = 0.0);
  m.def("normalized_difference", &normalized_difference, py::arg("omega"), py::arg("x"),
        py::arg("geometry") = unit, py::arg("policy") = policy);
  m.def(
      "suppression_db",
      [](double omega, double x, const CavityGeometry& g, const TruncationPolicy& p) {
        return suppression_db(omega, x, g, p).db;
      },
      py::arg("omega"), py::arg("x"), py::arg("geometry") = unit, py::arg("policy") = policy,
      "Suppression in dB, or None where the density is not positive.");
  m.def("two_point_yy_closed", &two_point_yy_closed, py::arg("s"), py::arg("point"),
        py::arg("geometry") = unit, py::arg("policy") = policy);
  m.def("two_point_yy_by_derivative", &two_point_yy_by_derivative, py::arg("s"), py::arg("point"),
        py::arg("geometry") = unit, py::arg("policy") = policy, py::arg("h") = kDefaultStep);
  m.def(
      "sigma_via_numeric_ft",
      [](double omega, const FieldPoint& point, const TruncationPolicy& p) {
        return sigma_via_numeric_ft(omega, point, CavityGeometry(), p);
      },
      py::arg("omega"), py::arg("point"), py::arg("policy") = policy);
  m.def(
      "build_grid",
      [](double lo, double hi, int count, double guard) {
        return build_grid(lo, hi, count, guard).points;
      },
      py::arg("omega_min"), py::arg("omega_max"), py::arg("count"),
      py::arg("guard") = kDefaultGuard);
  m.def(
      "smeared_R",
      [](const FieldPoint& p1, const FieldPoint& p2, const LOKernel& k, const TruncationPolicy& p) {
        return smeared_R(p1, p2, k, CavityGeometry(), p);
      },
      py::arg("p1"), py::arg("p2"), py::arg("kernel"), py::arg("policy") = policy);
  m.def(
      "variance_current",
      [](const DetectorConfig& c, const LOKernel& k, const TruncationPolicy& p) {
        return variance_current(c, k, CavityGeometry(), p);
      },
      py::arg("config"), py::arg("kernel"), py::arg("policy") = policy);
  m.def(
      "variance_approx",
      [](const FieldPoint& d, const LOKernel& k, const DetectorConfig& c,
         const TruncationPolicy& p) { return variance_approx(d, k, c, CavityGeometry(), p); },
      py::arg("diode"), py::arg("kernel"), py::arg("config"), py::arg("policy") = policy);
  m.def(
      "figure",
      [](const std::string& name, int N, unsigned workers) {
        cli::Common common;
        common.policy.N = N;
        common.workers = workers;
        const auto table = cli::figure_table(name, common);
        py::dict out;
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          py::list column;
          for (const auto& row : table.rows) column.append(row[c]);
          out[py::str(table.columns[c])] = column;
        }
        return out;
      },
      py::arg("name"), py::arg("N") = kDefaultTerms, py::arg("workers") = 1,
      "Figure data as a dict of columns (a = 1 micrometre).");
}
