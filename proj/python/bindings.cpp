#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elastoplasmon/cloaking.hpp"
#include "elastoplasmon/elastic_kernels.hpp"
#include "elastoplasmon/errors.hpp"
#include "elastoplasmon/io.hpp"
#include "elastoplasmon/np_spectrum.hpp"
#include "elastoplasmon/transmission.hpp"

namespace py = pybind11;
using namespace epl;

namespace {

ModalField to_field(const std::map<std::tuple<int, int, int>, Complex>& m, int n_max) {
    ModalField f(n_max);
    for (const auto& [k, v] : m) f.set(ModeIndex::make(std::get<0>(k), std::get<1>(k), std::get<2>(k)), v);
    return f;
}

std::map<std::tuple<int, int, int>, Complex> from_field(const ModalField& f) {
    std::map<std::tuple<int, int, int>, Complex> out;
    for (const auto& [k, v] : f.entries()) out[{k.family, k.n, k.m}] = v;
    return out;
}

}  // namespace

PYBIND11_MODULE(_elastoplasmon, mod) {
    mod.attr("__version__") = version();

    auto base = py::register_exception<Error>(mod, "Error", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(mod, "ArgumentError", base);
    py::register_exception<SingularityError>(mod, "SingularityError", base);
    py::register_exception<DegenerateMaterialError>(mod, "DegenerateMaterialError", base);
    py::register_exception<PoleError>(mod, "PoleError", base);
    py::register_exception<DegreeError>(mod, "DegreeError", base);
    py::register_exception<SingularSystemError>(mod, "SingularSystemError", base);
    py::register_exception<DomainError>(mod, "DomainError", base);

    py::class_<LameParams>(mod, "LameParams")
        .def_readonly("lam", &LameParams::lambda)
        .def_readonly("mu", &LameParams::mu)
        .def_static("background", &LameParams::background, py::arg("lambda0"), py::arg("mu0"))
        .def_static("plasmon", &LameParams::plasmon, py::arg("eps1"), py::arg("eps2"), py::arg("delta"), py::arg("bg"))
        .def("__repr__", [](const LameParams& p) {
            return "LameParams(lam=" + format_double(p.lambda.real()) + ", mu=" + format_double(p.mu.real()) + ")";
        });

    py::class_<PlasmonConfig>(mod, "PlasmonConfig")
        .def(py::init(&PlasmonConfig::make), py::arg("eps1"), py::arg("eps2"), py::arg("delta"), py::arg("bg"),
             py::arg("r0") = 1.0)
        .def_readonly("eps1", &PlasmonConfig::eps1)
        .def_readonly("eps2", &PlasmonConfig::eps2)
        .def_readonly("delta", &PlasmonConfig::delta)
        .def_readonly("r0", &PlasmonConfig::r0);

    py::class_<ShellConfig>(mod, "ShellConfig")
        .def(py::init(&ShellConfig::make), py::arg("r_i"), py::arg("r_e"), py::arg("eps1"), py::arg("eps2"),
             py::arg("eps3"), py::arg("eps4"), py::arg("delta"), py::arg("bg"))
        .def_static("preset", &ShellConfig::preset, py::arg("r_i"), py::arg("r_e"), py::arg("delta"), py::arg("bg"),
                    py::arg("eps1") = 1.0, py::arg("eps3") = 1.0)
        .def_readonly("eps2", &ShellConfig::eps2)
        .def_readonly("eps4", &ShellConfig::eps4)
        .def_readonly("delta", &ShellConfig::delta)
        .def_readonly("n0", &ShellConfig::n0)
        .def_property_readonly("rho", &ShellConfig::rho);

    mod.def("kelvin_matrix", &kelvin_matrix, py::arg("x"), py::arg("params"));
    mod.def("kupradze_matrix", &kupradze_matrix, py::arg("x"), py::arg("omega"), py::arg("params"),
            py::arg("n_terms") = 30);

    mod.def("np_eigenvalue", &np_eigenvalue, py::arg("family"), py::arg("n"), py::arg("params"));
    mod.def("sl_eigenvalue", &sl_eigenvalue, py::arg("family"), py::arg("n"), py::arg("params"));
    mod.def("resonance_denominator",
            py::overload_cast<int, int, double, double, double, const LameParams&>(&resonance_denominator),
            py::arg("family"), py::arg("n"), py::arg("eps1"), py::arg("eps2"), py::arg("delta"), py::arg("bg"));
    mod.def(
        "critical_value",
        [](const std::string& branch, int n, double eps_other, const LameParams& bg) {
            static const std::map<std::string, BranchKind> kinds = {
                {"C1", BranchKind::C1}, {"C21", BranchKind::C21}, {"C22", BranchKind::C22}, {"C3", BranchKind::C3}};
            const auto it = kinds.find(branch);
            if (it == kinds.end()) throw ArgumentError("branch must be C1, C21, C22 or C3");
            return critical_value({it->second, n}, eps_other, bg);
        },
        py::arg("branch"), py::arg("n"), py::arg("eps_other"), py::arg("bg"));
    mod.def(
        "scan_resonant_degrees",
        [](double eps1, double eps2, const LameParams& bg, int n_max, double tol) {
            std::vector<std::tuple<int, int, std::string, double>> out;
            for (const auto& r : scan_resonant_degrees(eps1, eps2, bg, n_max, tol))
                out.emplace_back(r.family, r.n, r.branch.label(), r.abs_d_at_zero);
            return out;
        },
        py::arg("eps1"), py::arg("eps2"), py::arg("bg"), py::arg("n_max"), py::arg("tol") = 1e-9);
    mod.def("dissipation_weight", &dissipation_weight, py::arg("family"), py::arg("n"), py::arg("cfg"));
    mod.def("weight_closed_form", &weight_closed_form, py::arg("family"), py::arg("n"), py::arg("cfg"));

    mod.def(
        "solve_single_inclusion",
        [](const std::map<std::tuple<int, int, int>, Complex>& h, const std::map<std::tuple<int, int, int>, Complex>& g,
           int n_max, const PlasmonConfig& cfg) {
            const SourceData src = SourceData::make(to_field(h, n_max), to_field(g, n_max), cfg.r0);
            const DensityPair dp = solve_single_inclusion(src, cfg);
            const SourceData back = forward_modal_map(dp, cfg);
            py::dict out;
            out["phi"] = from_field(dp.phi);
            out["psi"] = from_field(dp.psi);
            out["energy"] = dissipated_energy(dp, cfg);
            out["h_back"] = from_field(back.h);
            out["g_back"] = from_field(back.g);
            out["unexcited_resonant"] = dp.unexcited_resonant;
            return out;
        },
        py::arg("h"), py::arg("g"), py::arg("n_max"), py::arg("cfg"),
        "Densities for modal data keyed by (family, n, m), the dissipated energy and the forward map of the result.");

    mod.def(
        "shell_coefficients",
        [](int n, int m, Complex f, const ShellConfig& cfg) {
            const CloakCoefficients c = shell_coefficients(n, m, f, cfg);
            return py::dict(py::arg("upsilon") = c.upsilon, py::arg("phi") = c.phi, py::arg("varphi") = c.varphi,
                            py::arg("psi") = c.psi, py::arg("d_n") = c.d_n);
        },
        py::arg("n"), py::arg("m"), py::arg("f"), py::arg("cfg"));
    mod.def(
        "modal_system_solve",
        [](int n, int m, Complex f, const ShellConfig& cfg) {
            const ModalSolve s = modal_system_solve(n, m, f, cfg);
            return py::dict(py::arg("upsilon") = s.coeffs.upsilon, py::arg("phi") = s.coeffs.phi,
                            py::arg("varphi") = s.coeffs.varphi, py::arg("psi") = s.coeffs.psi,
                            py::arg("d_n") = s.coeffs.d_n, py::arg("condition") = s.condition);
        },
        py::arg("n"), py::arg("m"), py::arg("f"), py::arg("cfg"));
    mod.def("critical_radius", &critical_radius, py::arg("r_i"), py::arg("r_e"));
    mod.def("select_n0", &select_n0, py::arg("rho"), py::arg("delta"));
    mod.def("decaying_source", &decaying_source, py::arg("r_e"), py::arg("r_s"), py::arg("n_max"));
    mod.def(
        "calr_verdict",
        [](const Family1Table& f, double r_s, double r_i, double r_e, const LameParams& bg,
           const std::vector<double>& deltas, int threads) {
            const CalrReport r = calr_verdict(f, r_s, r_i, r_e, bg, deltas, CalrOptions{}, threads);
            py::list curve;
            for (const auto& p : r.curve)
                curve.append(py::dict(py::arg("delta") = p.delta, py::arg("n0") = p.n0, py::arg("energy") = p.energy,
                                      py::arg("max_exterior_sample") = p.max_exterior_sample));
            return py::dict(py::arg("resonant") = r.resonant, py::arg("energy_ratio") = r.energy_ratio,
                            py::arg("field_variation") = r.field_variation, py::arg("curve") = curve);
        },
        py::arg("f"), py::arg("r_s"), py::arg("r_i"), py::arg("r_e"), py::arg("bg"), py::arg("deltas"),
        py::arg("threads") = 1);

    mod.def("format_double", &format_double, py::arg("value"));
}
