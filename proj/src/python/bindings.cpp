#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "nhosc/analytic.hpp"
#include "nhosc/auxiliary.hpp"
#include "nhosc/errors.hpp"
#include "nhosc/evolve.hpp"
#include "nhosc/grid.hpp"
#include "nhosc/hermite.hpp"
#include "nhosc/io.hpp"
#include "nhosc/observables.hpp"
#include "nhosc/profiles.hpp"
#include "nhosc/scenario.hpp"

namespace py = pybind11;
using namespace nhosc;

namespace {

/// Owns the auxiliary solution and parameter set the raw kernel points at.
struct KernelHandle {
    std::shared_ptr<AuxiliarySolution> aux;
    std::shared_ptr<ParameterSet> params;
    double damping = 0.0;

    PropagatorKernel view() const { return {aux.get(), params.get(), damping}; }
};

py::array_t<cplx> psi_array(int n, py::array_t<double> xs, double t,
                            const AuxiliarySolution& aux, const ParameterSet& p,
                            double imag_shift) {
    const ModeState st(aux, p, t);
    auto r = xs.unchecked<1>();
    py::array_t<cplx> out(r.shape(0));
    auto w = out.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
        w(i) = st.psi(n, cplx(r(i), imag_shift));
    return out;
}

WavefunctionGrid make_state(const SpatialGrid& grid,
                            py::array_t<cplx> values, double t) {
    auto r = values.unchecked<1>();
    if (r.shape(0) != grid.n_points)
        throw GridMismatch("value count does not match the grid");
    WavefunctionGrid psi;
    psi.grid = grid;
    psi.t = t;
    psi.values.assign(r.data(0), r.data(0) + r.shape(0));
    return psi;
}

py::array_t<cplx> values_array(const WavefunctionGrid& psi) {
    py::array_t<cplx> out(psi.values.size());
    auto w = out.mutable_unchecked<1>();
    for (std::size_t i = 0; i < psi.values.size(); ++i) w(i) = psi.values[i];
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "non-Hermitian time-dependent oscillator: exact solutions and "
              "grid propagation";

    py::register_exception<Error>(m, "NhoscError");

    py::class_<TimeProfile>(m, "TimeProfile")
        .def_static("constant", &TimeProfile::constant, py::arg("value"))
        .def_static("linear", &TimeProfile::linear, py::arg("slope"),
                    py::arg("intercept") = 0.0)
        .def_static("polynomial", &TimeProfile::polynomial, py::arg("coefficients"))
        .def_static("tabulated", &TimeProfile::tabulated, py::arg("times"),
                    py::arg("values"))
        .def("__call__", &TimeProfile::eval, py::arg("t"))
        .def("derivative", &TimeProfile::derivative, py::arg("t"))
        .def_property_readonly("kind", &TimeProfile::kind);

    py::class_<ParameterSet>(m, "ParameterSet")
        .def(py::init([](const TimeProfile& mass, const TimeProfile& omega_sq,
                         const TimeProfile& lambda, double hbar,
                         std::pair<double, double> window) {
                 return ParameterSet(mass, omega_sq, lambda, hbar,
                                     {window.first, window.second});
             }),
             py::arg("mass"), py::arg("omega_sq"), py::arg("lambda_"),
             py::arg("hbar") = 1.0,
             py::arg("window") = std::pair<double, double>(-10.0, 10.0))
        .def_property_readonly("hbar", &ParameterSet::hbar)
        .def("mass", &ParameterSet::mass, py::arg("t"))
        .def("omega_sq", &ParameterSet::omega_sq, py::arg("t"))
        .def("lam", &ParameterSet::lambda, py::arg("t"));

    py::class_<PTClass>(m, "PTClass")
        .def_property_readonly(
            "verdict", [](const PTClass& c) { return to_string(c.verdict); })
        .def_readonly("evidence", &PTClass::evidence)
        .def("__repr__", [](const PTClass& c) {
            return "PTClass(" + to_string(c.verdict) + ", evidence=" +
                   std::to_string(c.evidence) + ")";
        });
    m.def("pt_classify", &pt_classify, py::arg("params"), py::arg("window"),
          py::arg("n_samples") = 512);

    py::class_<AuxInitialConditions>(m, "AuxInitialConditions")
        .def(py::init([](double s0, double s_dot0, double eta0, double eta_dot0) {
                 return AuxInitialConditions{s0, s_dot0, eta0, eta_dot0};
             }),
             py::arg("s0") = 1.0, py::arg("s_dot0") = 0.0, py::arg("eta0") = 0.0,
             py::arg("eta_dot0") = 0.0)
        .def_readwrite("s0", &AuxInitialConditions::s0)
        .def_readwrite("s_dot0", &AuxInitialConditions::s_dot0)
        .def_readwrite("eta0", &AuxInitialConditions::eta0)
        .def_readwrite("eta_dot0", &AuxInitialConditions::eta_dot0);

    py::class_<AuxiliarySolution, std::shared_ptr<AuxiliarySolution>>(
        m, "AuxiliarySolution")
        .def_readonly("m0", &AuxiliarySolution::m0)
        .def_readonly("omega0", &AuxiliarySolution::omega0)
        .def("s", &AuxiliarySolution::s, py::arg("t"))
        .def("s_dot", &AuxiliarySolution::s_dot, py::arg("t"))
        .def("eta", &AuxiliarySolution::eta, py::arg("t"))
        .def("eta_dot", &AuxiliarySolution::eta_dot, py::arg("t"))
        .def("tau", &AuxiliarySolution::tau, py::arg("t"))
        .def("mu", &AuxiliarySolution::mu, py::arg("t"))
        .def("f_tau_integral", &AuxiliarySolution::f_tau_integral, py::arg("t"))
        .def_property_readonly("t_mesh",
                               [](const AuxiliarySolution& a) {
                                   return a.reparam.t_mesh;
                               })
        .def_property_readonly("is_identity", &AuxiliarySolution::is_identity);

    m.def("default_initial_conditions", &default_initial_conditions,
          py::arg("params"), py::arg("t_start"));
    m.def(
        "solve_auxiliary",
        [](const ParameterSet& p, const AuxInitialConditions& init,
           std::pair<double, double> span, double omega0, double m0,
           int mesh_size, double rtol, double atol) {
            return std::make_shared<AuxiliarySolution>(solve_auxiliary(
                p, init, {span.first, span.second}, omega0, m0, mesh_size, rtol,
                atol));
        },
        py::arg("params"), py::arg("init"), py::arg("span"), py::arg("omega0"),
        py::arg("m0"), py::arg("mesh_size") = 2001, py::arg("rtol") = 1e-10,
        py::arg("atol") = 1e-12);
    m.def(
        "constant_case_solution",
        [](double mass, double omega, double a, std::pair<double, double> span,
           double hbar, int mesh_size) {
            return std::make_shared<AuxiliarySolution>(constant_case_solution(
                mass, omega, a, {span.first, span.second}, hbar, mesh_size));
        },
        py::arg("mass"), py::arg("omega"), py::arg("a"), py::arg("span"),
        py::arg("hbar") = 1.0, py::arg("mesh_size") = 1001);
    m.def(
        "residuals",
        [](const AuxiliarySolution& aux, const ParameterSet& p, double t) {
            const auto r = residuals(aux, p, t);
            return py::make_tuple(r.c1, r.c2, r.c3);
        },
        py::arg("aux"), py::arg("params"), py::arg("t"));
    m.def("phase_f", &phase_f, py::arg("aux"), py::arg("params"), py::arg("y"),
          py::arg("t"));

    m.def("hermite", &hermite, py::arg("n"), py::arg("z"));
    m.def("sigma_n", &sigma_n, py::arg("n"), py::arg("y"), py::arg("tau"),
          py::arg("m0") = 1.0, py::arg("omega0") = 1.0, py::arg("hbar") = 1.0);
    m.def("psi_n", &psi_n, py::arg("n"), py::arg("x"), py::arg("t"),
          py::arg("aux"), py::arg("params"));
    m.def("psi_n_grid", &psi_array, py::arg("n"), py::arg("x"), py::arg("t"),
          py::arg("aux"), py::arg("params"), py::arg("imag_shift") = 0.0,
          "vectorized psi_n over a numpy array of real positions");

    py::class_<SpatialGrid>(m, "SpatialGrid")
        .def_readonly("x_min", &SpatialGrid::x_min)
        .def_readonly("x_max", &SpatialGrid::x_max)
        .def_readonly("n_points", &SpatialGrid::n_points)
        .def_readonly("imag_shift", &SpatialGrid::imag_shift)
        .def_property_readonly("spacing", &SpatialGrid::spacing)
        .def_property_readonly("nodes", [](const SpatialGrid& g) {
            py::array_t<double> out(g.n_points);
            auto w = out.mutable_unchecked<1>();
            for (int i = 0; i < g.n_points; ++i) w(i) = g.node(i);
            return out;
        });
    m.def("build_grid", &build_grid, py::arg("center"), py::arg("half_width"),
          py::arg("n_points"), py::arg("imag_shift") = 0.0);

    py::class_<WavefunctionGrid>(m, "WavefunctionGrid")
        .def(py::init(&make_state), py::arg("grid"), py::arg("values"),
             py::arg("t") = 0.0)
        .def_readonly("grid", &WavefunctionGrid::grid)
        .def_readonly("t", &WavefunctionGrid::t)
        .def_property_readonly("values", &values_array);
    m.def(
        "sample_mode",
        [](int n, double t, const AuxiliarySolution& aux, const ParameterSet& p,
           const SpatialGrid& grid) {
            const ModeState st(aux, p, t);
            return sample_state([&](cplx x) { return st.psi(n, x); }, grid, t);
        },
        py::arg("n"), py::arg("t"), py::arg("aux"), py::arg("params"),
        py::arg("grid"));

    m.def(
        "evolve",
        [](const WavefunctionGrid& psi, const ParameterSet& p, double t_final,
           double dt, cplx coupling, bool enforce_dt_cap) {
            return evolve(psi, p, t_final, dt, {coupling, enforce_dt_cap});
        },
        py::arg("psi"), py::arg("params"), py::arg("t_final"), py::arg("dt"),
        py::arg("linear_coupling") = cplx(0.0, 1.0),
        py::arg("enforce_dt_cap") = true);
    m.def("apply_hamiltonian",
          [](const WavefunctionGrid& psi, const ParameterSet& p, double t) {
              return apply_hamiltonian(psi, p, t);
          },
          py::arg("psi"), py::arg("params"), py::arg("t"));
    m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));

    py::class_<KernelHandle>(m, "PropagatorKernel")
        .def(py::init([](std::shared_ptr<AuxiliarySolution> aux,
                         const ParameterSet& p, double damping) {
                 return KernelHandle{std::move(aux),
                                     std::make_shared<ParameterSet>(p), damping};
             }),
             py::arg("aux"), py::arg("params"), py::arg("damping") = 0.0)
        .def("evaluate",
             [](const KernelHandle& k, double x, double t, double x0, double t0) {
                 return k.view().evaluate(x, t, x0, t0);
             },
             py::arg("x"), py::arg("t"), py::arg("x0"), py::arg("t0"))
        .def("mehler_partial_sum",
             [](const KernelHandle& k, int n_terms, double x, double t, double x0,
                double t0) {
                 return k.view().mehler_partial_sum(n_terms, x, t, x0, t0);
             },
             py::arg("n_terms"), py::arg("x"), py::arg("t"), py::arg("x0"),
             py::arg("t0"))
        .def("apply",
             [](const KernelHandle& k, const WavefunctionGrid& psi0, double t) {
                 return kernel_apply(k.view(), psi0, t);
             },
             py::arg("psi0"), py::arg("t"));

    m.def(
        "energy_of_mode",
        [](int n, double t, const ParameterSet& p, const AuxiliarySolution& aux,
           double dt_fd, bool contour, int grid_points) {
            const SpatialGrid grid =
                energy_scan_grid(n, t, p, aux, grid_points, contour);
            auto state_at = [&](double tt) {
                const ModeState st(aux, p, tt);
                return sample_state([&](cplx x) { return st.psi(n, x); }, grid, tt);
            };
            return energy_expectation(state_at, t, dt_fd, p.hbar());
        },
        py::arg("n"), py::arg("t"), py::arg("params"), py::arg("aux"),
        py::arg("dt_fd") = 2.5e-3, py::arg("contour") = true,
        py::arg("grid_points") = 8193);
    m.def("closed_form_energy", &closed_form_energy, py::arg("n"), py::arg("t"),
          py::arg("params"), py::arg("aux"));
    m.def("closed_form_energy_paper", &closed_form_energy_paper, py::arg("n"),
          py::arg("t"), py::arg("params"), py::arg("aux"));
    m.def("gamma_dot_derived", &gamma_dot_derived, py::arg("aux"),
          py::arg("params"), py::arg("t"));
    m.def(
        "reality_scan",
        [](int n_max, const std::vector<double>& t_grid, const ParameterSet& p,
           const AuxiliarySolution& aux) {
            const EnergyReport r = reality_scan(n_max, t_grid, p, aux);
            py::dict out;
            out["max_imag_rel"] = r.max_imag_rel;
            out["pass"] = r.pass;
            py::list samples;
            for (const auto& s : r.samples) {
                py::dict row;
                row["n"] = s.n;
                row["t"] = s.t;
                row["E"] = s.E;
                row["E_closed_derived"] = s.E_closed_derived;
                samples.append(row);
            }
            out["samples"] = samples;
            return out;
        },
        py::arg("n_max"), py::arg("t_grid"), py::arg("params"), py::arg("aux"));

    m.def(
        "run_scenario",
        [](const std::string& scenario, const std::string& out_dir) {
            return run_scenario(scenario, out_dir);
        },
        py::arg("scenario"), py::arg("out_dir"));
    m.def(
        "compare_dumps",
        [](const std::string& a, const std::string& b) {
            const CompareResult r = compare_dumps(a, b);
            return py::make_tuple(r.l2_rel, r.linf_rel, r.phase_aligned_l2);
        },
        py::arg("a"), py::arg("b"));
}
