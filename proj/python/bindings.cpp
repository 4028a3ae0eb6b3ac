#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cylnls/diagnostics.hpp"
#include "cylnls/errors.hpp"
#include "cylnls/experiment.hpp"
#include "cylnls/fractional.hpp"
#include "cylnls/norms.hpp"
#include "cylnls/propagator.hpp"
#include "cylnls/transforms.hpp"
#include "cylnls/version.hpp"

namespace py = pybind11;
using namespace cylnls;

namespace {

std::vector<py::ssize_t> field_shape(const CylinderGrid& g) {
  std::vector<py::ssize_t> shape;
  for (int i = 0; i < g.d; ++i) shape.push_back(g.N_y);
  shape.push_back(g.N_x);
  return shape;
}

py::array_t<Complex> values_array(const ComplexField& f) {
  py::array_t<Complex> out(field_shape(*f.grid));
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

ComplexField field_from_array(GridPtr grid, py::array_t<Complex> arr,
                              SpaceTag tag) {
  auto buf = arr.request();
  if (static_cast<std::size_t>(buf.size) != grid->size()) {
    throw ConfigError("array size does not match grid");
  }
  auto contiguous = py::array_t<Complex, py::array::c_style |
                                             py::array::forcecast>::ensure(arr);
  std::vector<Complex> values(contiguous.data(),
                              contiguous.data() + contiguous.size());
  return ComplexField(std::move(grid), std::move(values), tag);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral NLS simulator and diagnostics on R^d x T";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_RuntimeError);

  py::enum_<SpaceTag>(m, "SpaceTag")
      .value("PHYSICAL", SpaceTag::Physical)
      .value("SPECTRAL", SpaceTag::Spectral)
      .value("SPECTRAL_Y", SpaceTag::SpectralY);

  py::enum_<TorusDirection>(m, "TorusDirection")
      .value("FORWARD", TorusDirection::Forward)
      .value("INVERSE", TorusDirection::Inverse);

  py::enum_<FracSign>(m, "FracSign")
      .value("POSITIVE", FracSign::Positive)
      .value("NEGATIVE", FracSign::Negative);

  py::class_<CylinderGrid, std::shared_ptr<CylinderGrid>>(m, "CylinderGrid")
      .def_readonly("d", &CylinderGrid::d)
      .def_readonly("L_y", &CylinderGrid::L_y)
      .def_readonly("N_y", &CylinderGrid::N_y)
      .def_readonly("N_x", &CylinderGrid::N_x)
      .def_readonly("dy", &CylinderGrid::dy)
      .def_readonly("dx", &CylinderGrid::dx)
      .def_readonly("xi", &CylinderGrid::xi)
      .def_readonly("k", &CylinderGrid::k)
      .def_readonly("y", &CylinderGrid::y)
      .def_readonly("x", &CylinderGrid::x)
      .def_property_readonly("chirp_min_time", &CylinderGrid::chirp_min_time)
      .def("__repr__", [](const CylinderGrid& g) {
        return "CylinderGrid(d=" + std::to_string(g.d) +
               ", L_y=" + std::to_string(g.L_y) +
               ", N_y=" + std::to_string(g.N_y) +
               ", N_x=" + std::to_string(g.N_x) + ")";
      });

  py::class_<ComplexField>(m, "ComplexField")
      .def_property_readonly("grid",
                             [](const ComplexField& f) { return f.grid; })
      .def_property_readonly("tag", [](const ComplexField& f) { return f.tag; })
      .def_property_readonly("values", &values_array);

  m.def("make_grid", &make_grid, py::arg("d"), py::arg("L_y"), py::arg("N_y"),
        py::arg("N_x"));
  m.def("field", &field_from_array, py::arg("grid"), py::arg("values"),
        py::arg("tag") = SpaceTag::Physical,
        "build a field from a numpy array shaped (N_y,)*d + (N_x,)");
  m.def("gaussian_packet", &gaussian_packet, py::arg("grid"), py::arg("width"),
        py::arg("center") = 0.0, py::arg("amplitude") = 1.0,
        py::arg("torus_mode") = 0);
  m.def("transform", &transform, py::arg("field"), py::arg("target"));

  m.def("mass", &mass);
  m.def("energy", &energy, py::arg("u"), py::arg("p"));
  m.def("mixed_norm", &mixed_norm, py::arg("u"), py::arg("r_y"),
        py::arg("sobolev_x"));
  m.def("sigma_norm", &sigma_norm);
  m.def("h1_norm", &h1_norm);
  m.def("boundary_shell_mass_fraction", &boundary_shell_mass_fraction);
  m.def("spectral_tail_fraction", &spectral_tail_fraction);
  m.def("spectral_ball_mass", &spectral_ball_mass, py::arg("u"),
        py::arg("radius"));

  m.def("propagate_free", &propagate_free, py::arg("u0"), py::arg("t"));
  m.def("propagate_torus", &propagate_torus, py::arg("u"), py::arg("t"),
        py::arg("direction"));
  m.def("dispersive_ratio", &dispersive_ratio, py::arg("h"), py::arg("t"));
  m.def("lightcone_mass", &lightcone_mass, py::arg("h"), py::arg("t"),
        py::arg("K"));

  m.def(
      "frac_laplacian_fourier",
      [](const ComplexField& u, double s, FracSign sign) {
        return frac_laplacian_fourier(u, s, sign);
      },
      py::arg("u"), py::arg("s"), py::arg("sign"));
  m.def("resolvent_apply", &resolvent_apply, py::arg("u"), py::arg("lambda_"));
  m.def("make_quadrature", &make_quadrature, py::arg("n_nodes") = 200,
        py::arg("split_point") = 1.0, py::arg("u_min") = -80.0,
        py::arg("u_max") = 80.0);
  m.def(
      "frac_laplacian_resolvent",
      [](const ComplexField& u, double s, const QuadratureScheme& q) {
        ResolventPowerResult r = frac_laplacian_resolvent(u, s, q);
        return py::make_tuple(r.field, r.warnings);
      },
      py::arg("u"), py::arg("s"), py::arg("scheme"),
      "returns (field, warnings)");
  m.def("c_of_s", &c_of_s, py::arg("s"));

  py::class_<QuadratureScheme>(m, "QuadratureScheme")
      .def_readonly("n_nodes", &QuadratureScheme::n_nodes)
      .def_readonly("split_point", &QuadratureScheme::split_point)
      .def_readonly("u_min", &QuadratureScheme::u_min)
      .def_readonly("u_max", &QuadratureScheme::u_max);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("p", &SimConfig::p)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("t0", &SimConfig::t0)
      .def_readwrite("t_end", &SimConfig::t_end)
      .def_readwrite("snapshot_times", &SimConfig::snapshot_times)
      .def_readwrite("boundary_mass_tol", &SimConfig::boundary_mass_tol)
      .def_readwrite("spectral_tail_tol", &SimConfig::spectral_tail_tol)
      .def_readwrite("amplitude", &SimConfig::amplitude);

  py::enum_<TrajectoryFlag>(m, "TrajectoryFlag")
      .value("OUT_OF_DOMAIN", TrajectoryFlag::OutOfDomain)
      .value("UNDER_RESOLVED", TrajectoryFlag::UnderResolved);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("p", &Trajectory::p)
      .def_property_readonly("flags",
                             [](const Trajectory& t) {
                               return std::vector<TrajectoryFlag>(
                                   t.flags.begin(), t.flags.end());
                             })
      .def("snapshot",
           [](const Trajectory& t, std::size_t i) { return t.snapshots.at(i); })
      .def_property_readonly("conserved", [](const Trajectory& t) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& [time, c] : t.conserved) {
          out.emplace_back(time, c.mass, c.energy);
        }
        return out;
      });

  m.def("evolve", &evolve, py::arg("u0"), py::arg("config"));
  m.def("nonlinear_phase_step", &nonlinear_phase_step, py::arg("u"),
        py::arg("dt"), py::arg("p"));
  m.def("step_strang", &step_strang, py::arg("u"), py::arg("t"), py::arg("dt"),
        py::arg("p"));

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("gamma_hat", &PowerLawFit::gamma_hat)
      .def_readonly("intercept", &PowerLawFit::intercept)
      .def_readonly("r2", &PowerLawFit::r2);

  py::class_<NormSeries>(m, "NormSeries")
      .def_readonly("name", &NormSeries::name)
      .def_readonly("samples", &NormSeries::samples);

  m.def(
      "fit_decay",
      [](const std::vector<std::pair<double, double>>& samples, double lo,
         double hi) {
        NormSeries s;
        s.samples = samples;
        return fit_decay(s, lo, hi);
      },
      py::arg("samples"), py::arg("window_lo"), py::arg("window_hi"));
  m.def("j_operator", &j_operator, py::arg("u"), py::arg("t"), py::arg("s"));
  m.def("j_operator_conjugated", &j_operator_conjugated, py::arg("u"),
        py::arg("t"), py::arg("s"));
  m.def("pullback", &pullback, py::arg("u"), py::arg("t"));
  m.def("j_equation_residual", &j_equation_residual, py::arg("traj"),
        py::arg("t"), py::arg("s"), py::arg("p"), py::arg("delta") = 0.0);
  m.def("extract_scattering_state", &extract_scattering_state, py::arg("traj"));
  m.def("witness_integral", &witness_integral, py::arg("traj"), py::arg("h"),
        py::arg("p"));
  m.def("witness_integrand", &witness_integrand, py::arg("traj"), py::arg("h"),
        py::arg("p"));
  m.def("witness_envelope_integral", &witness_envelope_integral,
        py::arg("times"), py::arg("h"), py::arg("p"));
  m.def("pullback_increments", &pullback_increments, py::arg("traj"),
        py::arg("ladder"), py::arg("sobolev"));

  m.def(
      "run_config",
      [](const std::string& path) {
        const ExperimentReport rep = run_experiment(parse_config(path));
        py::dict out;
        out["verdict"] = to_string(rep.verdict);
        py::dict checks;
        for (const CheckResult& c : rep.checks) {
          checks[py::str(c.name)] =
              py::make_tuple(c.value, c.relation, c.threshold, c.passed);
        }
        out["checks"] = checks;
        out["out_dir"] = rep.spec.out_dir;
        return out;
      },
      py::arg("config_path"), "parse, run, and summarize an experiment");
}
