#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "friedrichs/evolution.hpp"
#include "friedrichs/gamov.hpp"
#include "friedrichs/perturbative.hpp"
#include "friedrichs/run.hpp"
#include "friedrichs/spectral.hpp"

namespace py = pybind11;
namespace fr = friedrichs;

PYBIND11_MODULE(_friedrichs, m) {
  m.doc() = "N-level Friedrichs model: resonance poles, survival amplitudes, Gamov data";
  m.attr("__version__") = FRIEDRICHS_VERSION;

  auto base = py::register_exception<fr::Error>(m, "FriedrichsError");
  py::register_exception<fr::InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<fr::ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<fr::SingularMatrixError>(m, "SingularMatrixError", base.ptr());
  py::register_exception<fr::DegenerateInputError>(m, "DegenerateInputError", base.ptr());

  py::class_<fr::ModelParams>(m, "ModelParams")
      .def(py::init([](std::vector<double> omega, std::vector<double> rho, double lambda) {
             return fr::make_params(std::move(omega), std::move(rho), lambda);
           }),
           py::arg("omega"), py::arg("rho"), py::arg("lam"))
      .def_readonly("omega", &fr::ModelParams::omega)
      .def_readonly("rho", &fr::ModelParams::rho)
      .def_readonly("lam", &fr::ModelParams::lambda)
      .def_property_readonly("n_levels", &fr::ModelParams::n_levels)
      .def("__repr__", [](const fr::ModelParams& p) {
        return "ModelParams(n_levels=" + std::to_string(p.n_levels()) + ", lam=" + std::to_string(p.lambda) + ")";
      });

  py::class_<fr::PhenoParams>(m, "PhenoParams")
      .def(py::init([](std::vector<double> w, std::vector<double> g) {
             fr::PhenoParams p{std::move(w), std::move(g)};
             p.validate();
             return p;
           }),
           py::arg("omega_tilde"), py::arg("gamma"))
      .def_readonly("omega_tilde", &fr::PhenoParams::omega_tilde)
      .def_readonly("gamma", &fr::PhenoParams::gamma);

  py::class_<fr::InitialState>(m, "InitialState")
      .def(py::init(&fr::InitialState::make), py::arg("a"), py::arg("normalize") = true)
      .def_readonly("a", &fr::InitialState::a)
      .def_readonly("normalized", &fr::InitialState::normalized);

  py::class_<fr::ResonancePole>(m, "ResonancePole")
      .def_readonly("z", &fr::ResonancePole::z)
      .def_readonly("omega_tilde", &fr::ResonancePole::omega_tilde)
      .def_readonly("gamma", &fr::ResonancePole::gamma)
      .def_readonly("residues", &fr::ResonancePole::residues)
      .def_readonly("s", &fr::ResonancePole::s);

  py::class_<fr::SurvivalCurve>(m, "SurvivalCurve")
      .def_readonly("t", &fr::SurvivalCurve::t)
      .def_readonly("amplitude", &fr::SurvivalCurve::amplitude)
      .def_readonly("probability", &fr::SurvivalCurve::probability)
      .def_readonly("pole_part", &fr::SurvivalCurve::pole_part)
      .def_readonly("background", &fr::SurvivalCurve::background);

  py::class_<fr::GamovData>(m, "GamovData")
      .def_readonly("pole", &fr::GamovData::pole)
      .def_readonly("norm_sq_inv", &fr::GamovData::norm_sq_inv)
      .def_readonly("coupling_vector", &fr::GamovData::coupling_vector);

  py::class_<fr::IdentityCheck>(m, "IdentityCheck")
      .def_readonly("name", &fr::IdentityCheck::name)
      .def_readonly("value", &fr::IdentityCheck::value)
      .def_readonly("threshold", &fr::IdentityCheck::threshold)
      .def_readonly("passed", &fr::IdentityCheck::pass);

  m.def("formfactor", [](const fr::ModelParams& p, std::size_t k, fr::cplx s) {
    return fr::eval_formfactor(p, k, fr::SheetPoint{s});
  }, py::arg("params"), py::arg("k"), py::arg("s"), "f_k at the uniformization point s (k zero-based)");
  m.def("resolvent_inverse", &fr::resolvent_inverse_matrix, py::arg("params"), py::arg("s"));
  m.def("resolvent", &fr::resolvent_matrix, py::arg("params"), py::arg("s"));
  m.def("check_discontinuity_identity", &fr::check_discontinuity_identity, py::arg("params"), py::arg("omega"));
  m.def("check_sum_rule", [](const fr::ModelParams& p, double tol) {
    py::gil_scoped_release nogil;
    return fr::RMatrix(fr::check_sum_rule(p, tol).residual);
  }, py::arg("params"), py::arg("quad_tol") = 1e-8);

  m.def("find_poles_two_level", [](const fr::ModelParams& p) {
    const auto r = fr::find_poles_two_level(p);
    std::vector<fr::cplx> roots;
    for (const auto& x : r.roots) roots.push_back(x.x);
    return py::make_tuple(roots, r.resonances);
  }, py::arg("params"), "(eight polynomial roots x, resonance poles)");
  m.def("find_resonances", &fr::find_resonances, py::arg("params"), py::call_guard<py::gil_scoped_release>());
  m.def("compute_residue", py::overload_cast<const fr::ModelParams&, fr::cplx>(&fr::compute_residue),
        py::arg("params"), py::arg("z"));
  m.def("analyticity_passes", [](const fr::ModelParams& p) { return fr::validate_analyticity(p).pass; },
        py::arg("params"), py::call_guard<py::gil_scoped_release>());

  m.def("amplitude_matrix", py::overload_cast<const fr::ModelParams&, double, double>(&fr::amplitude_matrix_exact),
        py::arg("params"), py::arg("t"), py::arg("quad_tol") = 1e-8, py::call_guard<py::gil_scoped_release>());
  m.def("g_kernel", py::overload_cast<const fr::ModelParams&, double, double, double>(&fr::g_kernel),
        py::arg("params"), py::arg("omega"), py::arg("t"), py::arg("quad_tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());
  m.def("survival", [](const fr::ModelParams& p, const fr::InitialState& s, std::vector<double> t, double tol) {
    return fr::survival(p, s, t, tol);
  }, py::arg("params"), py::arg("state"), py::arg("times"), py::arg("quad_tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());

  m.def("poles_two_level_perturbative", &fr::poles_two_level_perturbative, py::arg("params"), py::arg("order") = 2);
  m.def("poles_nlevel_perturbative", &fr::poles_nlevel_perturbative, py::arg("params"));
  m.def("survival_lowest", [](const fr::PhenoParams& p, const fr::InitialState& s, std::vector<double> t) {
    return fr::lowest_order_curve(p, s, t);
  }, py::arg("pheno"), py::arg("state"), py::arg("times"));
  m.def("gaussian_wavepacket", &fr::gaussian_wavepacket, py::arg("n_side"), py::arg("omega0"),
        py::arg("delta_omega"), py::arg("gamma"), py::arg("normalize") = false);

  m.def("gamov_normalization", &fr::gamov_normalization, py::arg("params"), py::arg("pole"),
        py::arg("quad_tol") = 1e-10, py::call_guard<py::gil_scoped_release>());
  m.def("check_residue_identity",
        py::overload_cast<const fr::ModelParams&, const fr::ResonancePole&, double>(&fr::check_residue_identity),
        py::arg("params"), py::arg("pole"), py::arg("quad_tol") = 1e-10, py::call_guard<py::gil_scoped_release>());

  m.def("verify_identities", &fr::verify_identities, py::arg("params"), py::arg("quad_tol") = 1e-8,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_config", [](const std::string& json_text, const std::filesystem::path& out) {
    fr::RunReport r;
    try {
      r = fr::run(fr::parse_config(json_text), out);
    } catch (const fr::ConfigError& e) {
      r.exit_code = fr::exit_config;
      r.messages.push_back(e.what());
    }
    return py::make_tuple(r.exit_code, r.messages, r.files);
  }, py::arg("config_json"), py::arg("out_dir"), "(exit code, messages, written files)");
  m.def("reproduce_figure", [](int which, const std::filesystem::path& out, bool normalize) {
    fr::FigureOptions fo;
    fo.normalize = normalize;
    const auto r = fr::reproduce_figure(which, out, fo);
    return py::make_tuple(r.exit_code, r.messages, r.files);
  }, py::arg("which"), py::arg("out_dir"), py::arg("normalize") = false);
}
