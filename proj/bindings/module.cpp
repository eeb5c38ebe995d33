#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tnse/diagnostics.hpp"
#include "tnse/invariant.hpp"
#include "tnse/runner.hpp"

#include <sstream>

namespace py = pybind11;
using namespace tnse;

namespace {

// numpy bridge: complex array of shape (3, M, M, M) <-> SpectralField
py::array_t<std::complex<double>> field_to_numpy(const SpectralField& u) {
    const std::size_t M = u.grid->M();
    py::array_t<std::complex<double>> out({std::size_t(3), M, M, M});
    std::copy(u.coeffs.begin(), u.coeffs.end(), out.mutable_data());
    return out;
}

SpectralField numpy_to_field(py::array_t<std::complex<double>, py::array::c_style> arr, double L,
                             double ball_radius) {
    if (arr.ndim() != 4 || arr.shape(0) != 3 || arr.shape(1) != arr.shape(2) ||
        arr.shape(2) != arr.shape(3))
        throw std::invalid_argument("expected complex array of shape (3, M, M, M)");
    const std::size_t M = static_cast<std::size_t>(arr.shape(1));
    SpectralField u(make_grid(M, L), ball_radius);
    std::copy(arr.data(), arr.data() + u.coeffs.size(), u.coeffs.begin());
    return u;
}

SimConfig sim_config_from_text(const std::string& text) {
    return Config::from_string(text).to_sim_config();
}

} // namespace

PYBIND11_MODULE(_tnse, m) {
    m.doc() = "Spectral simulator for the tamed stochastic Navier-Stokes system";

    py::class_<TamingFunction>(m, "TamingFunction")
        .def(py::init<double>(), py::arg("N"))
        .def("g", &TamingFunction::g)
        .def("g_prime", &TamingFunction::g_prime)
        .def("phi", &TamingFunction::phi)
        .def_readonly("N", &TamingFunction::N)
        .def("energy_constant", &TamingFunction::energy_constant)
        .def("gradient_form_constant", &TamingFunction::gradient_form_constant);

    py::class_<PathSummary>(m, "PathSummary")
        .def_readonly("sup_V2", &PathSummary::sup_V2)
        .def_readonly("int_DA2", &PathSummary::int_DA2)
        .def_readonly("int_L4", &PathSummary::int_L4)
        .def_readonly("int_V2", &PathSummary::int_V2)
        .def_readonly("sup_V2_stop", &PathSummary::sup_V2_stop)
        .def_readonly("hitting_time", &PathSummary::hitting_time)
        .def_readonly("final_H2", &PathSummary::final_H2)
        .def_readonly("max_energy_residual", &PathSummary::max_energy_residual)
        .def_readonly("rms_energy_residual", &PathSummary::rms_energy_residual);

    // spectral operators on (3, M, M, M) complex coefficient arrays
    m.def(
        "leray_project",
        [](py::array_t<std::complex<double>, py::array::c_style> arr, double L, double n) {
            SpectralField u = numpy_to_field(arr, L, n);
            leray_project_inplace(u);
            return field_to_numpy(u);
        },
        py::arg("coeffs"), py::arg("L") = 2.0 * M_PI, py::arg("n") = 4.0);
    m.def(
        "project_ball",
        [](py::array_t<std::complex<double>, py::array::c_style> arr, double L, double n) {
            SpectralField u = numpy_to_field(arr, L, n);
            project_ball_inplace(u, n);
            return field_to_numpy(u);
        },
        py::arg("coeffs"), py::arg("L") = 2.0 * M_PI, py::arg("n") = 4.0);
    m.def(
        "nonlinear_term",
        [](py::array_t<std::complex<double>, py::array::c_style> arr, double L, double n) {
            SpectralField u = numpy_to_field(arr, L, n);
            SpectralTransform xf(u.grid);
            return field_to_numpy(nonlinear_B(u, xf));
        },
        py::arg("coeffs"), py::arg("L") = 2.0 * M_PI, py::arg("n") = 4.0);
    m.def(
        "norms",
        [](py::array_t<std::complex<double>, py::array::c_style> arr, double L, double n) {
            SpectralField u = numpy_to_field(arr, L, n);
            SpectralTransform xf(u.grid);
            py::dict d;
            d["H2"] = norm2_H(u);
            d["grad2"] = norm2_grad(u);
            d["V2"] = norm2_V(u);
            d["DA2"] = norm2_DA(u);
            d["L4_4"] = norm4_L4(u, xf);
            return d;
        },
        py::arg("coeffs"), py::arg("L") = 2.0 * M_PI, py::arg("n") = 4.0);

    // one path from a config text; returns the recorded series and summary
    m.def(
        "simulate",
        [](const std::string& config_text, std::size_t path_index) {
            SimConfig cfg = sim_config_from_text(config_text);
            Trajectory tr = simulate_path(cfg, path_index);
            py::dict d;
            d["t"] = tr.record.t;
            d["H2"] = tr.record.H2;
            d["V2"] = tr.record.V2;
            d["L4_4"] = tr.record.L4_4;
            d["energy_residual"] = tr.record.energy_residual;
            d["summary"] = tr.summary;
            d["final_coeffs"] = field_to_numpy(tr.final_state);
            return d;
        },
        py::arg("config_text"), py::arg("path_index") = 0);

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            std::ostringstream out;
            const int rc = run_verify(suite, seed, out);
            return py::make_tuple(rc, out.str());
        },
        py::arg("suite") = "all", py::arg("seed") = 12345);

    m.def("default_config", [] { return Config::defaults().print(); });
    m.def("run_manifest",
          [](const std::string& text) { return run_manifest(Config::from_string(text)); });
}
