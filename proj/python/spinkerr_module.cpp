#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spinkerr/errors.hpp"
#include "spinkerr/fock.hpp"
#include "spinkerr/lindblad.hpp"
#include "spinkerr/params.hpp"
#include "spinkerr/photon_stats.hpp"
#include "spinkerr/scenario.hpp"
#include "spinkerr/sweep.hpp"
#include "spinkerr/weak_drive.hpp"

namespace py = pybind11;
using namespace spinkerr;

PYBIND11_MODULE(_spinkerr, m) {
    m.doc() = "Photon blockade in a spinning Kerr resonator";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    auto invalid = py::register_exception<InvalidParameter>(m, "InvalidParameter", error.ptr());
    py::register_exception<InvalidDetuning>(m, "InvalidDetuning", invalid.ptr());
    py::register_exception<TruncationFailure>(m, "TruncationFailure", error.ptr());
    py::register_exception<DegenerateSystem>(m, "DegenerateSystem", error.ptr());
    py::register_exception<DegenerateParameter>(m, "DegenerateParameter", error.ptr());
    py::register_exception<StepSizeError>(m, "StepSizeError", error.ptr());
    py::register_exception<UndefinedCorrelation>(m, "UndefinedCorrelation", error.ptr());

    py::enum_<DriveSide>(m, "DriveSide").value("Left", DriveSide::Left).value("Right", DriveSide::Right);

    py::class_<PhysicalConfig>(m, "PhysicalConfig")
        .def(py::init<>())
        .def_readwrite("n0", &PhysicalConfig::n0)
        .def_readwrite("n2", &PhysicalConfig::n2)
        .def_readwrite("v_eff", &PhysicalConfig::v_eff)
        .def_readwrite("q_factor", &PhysicalConfig::q_factor)
        .def_readwrite("wavelength", &PhysicalConfig::wavelength)
        .def_readwrite("radius", &PhysicalConfig::radius)
        .def_readwrite("p_in", &PhysicalConfig::p_in)
        .def_readwrite("omega_spin", &PhysicalConfig::omega_spin)
        .def_readwrite("dispersion", &PhysicalConfig::dispersion)
        .def_readwrite("drive_side", &PhysicalConfig::drive_side)
        .def("validate", &PhysicalConfig::validate)
        .def("omega0", &PhysicalConfig::omega0);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init([](double delta_l, double delta_f, double u, double xi, double gamma) {
                 return ModelParams{delta_l, delta_f, u, xi, gamma};
             }),
             py::arg("delta_l"), py::arg("delta_f"), py::arg("u"), py::arg("xi"), py::arg("gamma"))
        .def_readwrite("delta_l", &ModelParams::delta_l)
        .def_readwrite("delta_f", &ModelParams::delta_f)
        .def_readwrite("u", &ModelParams::u)
        .def_readwrite("xi", &ModelParams::xi)
        .def_readwrite("gamma", &ModelParams::gamma)
        .def("validate", &ModelParams::validate)
        .def("tuning", &ModelParams::tuning);

    m.def("fizeau_shift", &fizeau_shift);
    m.def("kerr_strength", &kerr_strength);
    m.def("decay_rate", &decay_rate);
    m.def("drive_amplitude", &drive_amplitude, py::arg("cfg"), py::arg("delta_l"));
    m.def("model_params", &model_params, py::arg("cfg"), py::arg("k"));

    py::class_<FockSpace>(m, "FockSpace").def(py::init<int>()).def_property_readonly("dim", &FockSpace::dim);
    m.def("hamiltonian", &hamiltonian);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<Eigen::MatrixXcd>())
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def("population", &DensityMatrix::population)
        .def("check_invariants", &DensityMatrix::check_invariants, py::arg("tol") = 1e-10);

    py::class_<SteadyStateReport>(m, "SteadyStateReport")
        .def_readonly("rho", &SteadyStateReport::rho)
        .def_readonly("residual", &SteadyStateReport::residual)
        .def_readonly("n_max_used", &SteadyStateReport::n_max_used)
        .def_readonly("tail_population", &SteadyStateReport::tail_population);
    m.def(
        "steady_state",
        [](const ModelParams& p, int n_max) { return steady_state(p, FockSpace(n_max)); }, py::arg("p"),
        py::arg("n_max") = kDefaultInitialNMax);

    py::class_<CorrelationReport>(m, "CorrelationReport")
        .def_readonly("mean_n", &CorrelationReport::mean_n)
        .def_readonly("g", &CorrelationReport::g)
        .def_readonly("pn", &CorrelationReport::pn)
        .def_readonly("poisson", &CorrelationReport::poisson)
        .def_readonly("f", &CorrelationReport::f)
        .def_readonly("f_n", &CorrelationReport::f_n);
    m.def("correlations", &correlations, py::arg("rho"), py::arg("mu_max") = 4);

    py::class_<Classification>(m, "Classification")
        .def_property_readonly("label", &Classification::label)
        .def_readonly("order", &Classification::order);
    m.def("classify", &classify, py::arg("report"), py::arg("candidates") = std::set<int>{1, 2, 3});

    py::class_<ResonanceCheck>(m, "ResonanceCheck")
        .def_readonly("allowed", &ResonanceCheck::allowed)
        .def_readonly("required_delta_f", &ResonanceCheck::required_delta_f)
        .def_readonly("matches", &ResonanceCheck::matches);
    m.def("resonance_compatibility", &resonance_compatibility);

    m.def("g2_analytic", &g2_analytic);
    m.def("g3_analytic", &g3_analytic);
    m.def("weak_drive_g2", [](const ModelParams& p) { return weak_drive_correlations(p).g2; });

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("k", &SweepRow::k)
        .def_readonly("omega_spin", &SweepRow::omega_spin)
        .def_readonly("direction", &SweepRow::direction)
        .def_readonly("mean_n", &SweepRow::mean_n)
        .def_readonly("g2_numeric", &SweepRow::g2_numeric)
        .def_readonly("g3_numeric", &SweepRow::g3_numeric)
        .def_readonly("g4_numeric", &SweepRow::g4_numeric)
        .def_readonly("g2_analytic", &SweepRow::g2_analytic)
        .def_readonly("g3_analytic", &SweepRow::g3_analytic)
        .def_readonly("classification", &SweepRow::classification)
        .def("csv_line", &csv_line);
    m.def("run_point", &run_point, py::arg("cfg"), py::arg("k"), py::arg("n_max") = kDefaultInitialNMax,
          py::call_guard<py::gil_scoped_release>());
    m.attr("CSV_HEADER") = kCsvHeader;

    m.def("builtin_scenario_names", &builtin_scenario_names);
    m.def("scenario_json", [](const std::string& name) { return scenario_to_json(builtin_scenario(name)); });
    m.def(
        "run_scenario",
        [](const std::string& name_or_path, const std::filesystem::path& out_dir, unsigned jobs) {
            return run_scenario(load_scenario(name_or_path), out_dir, jobs).passed;
        },
        py::arg("scenario"), py::arg("out_dir"), py::arg("jobs") = 0, py::call_guard<py::gil_scoped_release>());
}
