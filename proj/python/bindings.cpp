#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tricomi/besselk.hpp"
#include "tricomi/cli.hpp"
#include "tricomi/model.hpp"
#include "tricomi/odelab.hpp"
#include "tricomi/pdesim.hpp"
#include "tricomi/testfn.hpp"

namespace py = pybind11;
using namespace tricomi;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

ModelParams make_params(double m, double mu, double nu, double p, int dim, double radius, double eps) {
    ModelFields f;
    f.m = m;
    f.mu = mu;
    f.nu = nu;
    f.p = p;
    f.dim = dim;
    f.radius = radius;
    f.eps = eps;
    return ModelParams(f);
}

py::dict trajectory_dict(const odelab::OdeTrajectory& t) {
    py::dict d;
    d["t"] = array(t.times);
    d["F1"] = array(t.f1);
    d["F1p"] = array(t.f1p);
    d["F2"] = array(t.f2);
    d["min_F2"] = t.summary.min_f2;
    d["argmin_F2"] = t.summary.argmin;
    d["sign_changes"] = t.summary.sign_changes;
    d["crossings"] = t.summary.crossings;
    d["eventual_positive_time"] = t.summary.eventual_positive_time;
    return d;
}

py::dict run_dict(const pde::RunRecord& r) {
    std::vector<double> t, max_u, max_v, min_u, support, energy;
    for (const auto& f : r.frames) {
        t.push_back(f.t);
        max_u.push_back(f.max_u);
        max_v.push_back(f.max_v);
        min_u.push_back(f.min_u);
        support.push_back(f.support);
        energy.push_back(f.energy);
    }
    py::dict d;
    d["reason"] = pde::to_string(r.reason);
    d["blowup_time"] = r.blowup_time;
    d["t_end"] = r.t_end;
    d["steps"] = r.steps;
    d["dx"] = r.grid.dx;
    d["support_excess"] = r.support_excess;
    d["positivity_held"] = r.positivity_held;
    d["t"] = array(t);
    d["max_u"] = array(max_u);
    d["max_v"] = array(max_v);
    d["min_u"] = array(min_u);
    d["support"] = array(support);
    d["energy"] = array(energy);
    d["x"] = array(r.grid.x);
    if (!r.frames.empty() && !r.frames.back().u.empty()) {
        d["u"] = array(r.frames.back().u);
        d["v"] = array(r.frames.back().v);
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Bessel test functions, functional ODEs and a 1-D blow-up solver for the generalized Tricomi equation";
    mod.attr("__version__") = TRICOMI_LAB_VERSION;

    mod.def("besselk", &besselk, py::arg("order"), py::arg("z"), "K_order(z) for order >= 0, z > 0");
    mod.def("besselk_scaled", &besselk_scaled, py::arg("order"), py::arg("z"), "exp(z) K_order(z)");
    mod.def("besselk_dz", &besselk_dz, py::arg("order"), py::arg("z"), "d/dz K_order(z)");
    mod.def("phi_m", &phi_m, py::arg("t"), py::arg("m"));
    mod.def("delta_of", &delta_of, py::arg("mu"), py::arg("nu"));

    py::class_<ModelParams>(mod, "ModelParams")
        .def(py::init(&make_params), py::kw_only(), py::arg("m") = 0.0, py::arg("mu") = 0.0, py::arg("nu") = 0.0,
             py::arg("p") = 2.0, py::arg("dim") = 1, py::arg("radius") = 1.0, py::arg("eps") = 1.0)
        .def_property_readonly("m", &ModelParams::m)
        .def_property_readonly("mu", &ModelParams::mu)
        .def_property_readonly("nu", &ModelParams::nu)
        .def_property_readonly("p", &ModelParams::p)
        .def_property_readonly("dim", &ModelParams::dim)
        .def_property_readonly("radius", &ModelParams::radius)
        .def_property_readonly("eps", &ModelParams::eps)
        .def_property_readonly("delta", &ModelParams::delta)
        .def("with_eps", &ModelParams::with_eps)
        .def("lifespan_exponent",
             [](const ModelParams& p) {
                 const auto e = lifespan_exponent(p);
                 const char* kind = e.kind == LifespanExponent::Kind::kPower         ? "power"
                                    : e.kind == LifespanExponent::Kind::kExponential ? "exponential"
                                                                                     : "none";
                 return py::make_tuple(kind, e.is_power() ? py::cast(e.alpha) : py::none());
             })
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream os;
            os << "ModelParams(m=" << p.m() << ", mu=" << p.mu() << ", nu=" << p.nu() << ", p=" << p.p()
               << ", dim=" << p.dim() << ", radius=" << p.radius() << ", eps=" << p.eps() << ")";
            return os.str();
        });

    py::class_<TestFunctionSet>(mod, "TestFunctionSet")
        .def(py::init<const ModelParams&>())
        .def_property_readonly("has_rho", &TestFunctionSet::has_rho)
        .def_property_readonly("order", &TestFunctionSet::order)
        .def("phi", &TestFunctionSet::phi)
        .def("rho", &TestFunctionSet::rho)
        .def("rho_scaled", &TestFunctionSet::rho_scaled)
        .def("log_rho", &TestFunctionSet::log_rho)
        .def("rho_log_derivative", &TestFunctionSet::rho_log_derivative)
        .def("rho_ode_residual", &TestFunctionSet::rho_ode_residual)
        .def("asymptotic_ratio", &TestFunctionSet::asymptotic_ratio)
        .def("gamma", &TestFunctionSet::gamma)
        .def("multiplier", &TestFunctionSet::multiplier);

    mod.def("lemma1_ratio", &lemma1_ratio, py::arg("params"), py::arg("t"), py::arg("r"));

    mod.def(
        "ode_figure", [](int n) { return trajectory_dict(odelab::integrate_f1(odelab::figure_config(n))); },
        py::arg("figure"), "F1/F2 trajectory for reference figure 1..7");
    mod.def(
        "ode_run",
        [](const ModelParams& params, double f1, double f1p, double t_end, double rel_tol, double abs_tol, int samples) {
            odelab::OdeRunConfig c;
            c.params = params;
            c.f1_init = f1;
            c.f1p_init = f1p;
            c.t_end = t_end;
            c.rel_tol = rel_tol;
            c.abs_tol = abs_tol;
            c.samples = samples;
            py::gil_scoped_release release;
            auto t = odelab::integrate_f1(c);
            py::gil_scoped_acquire acquire;
            return trajectory_dict(t);
        },
        py::arg("params"), py::kw_only(), py::arg("f1") = 1.0, py::arg("f1p") = 1.0, py::arg("t_end") = 10.0,
        py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-12, py::arg("samples") = 2001);

    py::class_<pde::PdeConfig>(mod, "PdeConfig")
        .def(py::init([](const ModelParams& params) {
                 pde::PdeConfig c;
                 c.params = params;
                 return c;
             }),
             py::arg("params"))
        .def_readwrite("params", &pde::PdeConfig::params)
        .def_readwrite("nx", &pde::PdeConfig::nx)
        .def_readwrite("dx", &pde::PdeConfig::dx)
        .def_readwrite("cfl", &pde::PdeConfig::cfl)
        .def_readwrite("t_max", &pde::PdeConfig::t_max)
        .def_readwrite("blowup_threshold", &pde::PdeConfig::blowup_threshold)
        .def_readwrite("domain_half_width", &pde::PdeConfig::domain_half_width)
        .def_readwrite("margin", &pde::PdeConfig::margin)
        .def_readwrite("nonlinear", &pde::PdeConfig::nonlinear)
        .def_property(
            "u0", [](const pde::PdeConfig& c) { return pde::to_string(c.u0); },
            [](pde::PdeConfig& c, const std::string& s) { c.u0 = pde::parse_profile(s); })
        .def_property(
            "u1", [](const pde::PdeConfig& c) { return pde::to_string(c.u1); },
            [](pde::PdeConfig& c, const std::string& s) { c.u1 = pde::parse_profile(s); })
        .def_readwrite("frames", &pde::PdeConfig::frames)
        .def_readwrite("keep_fields", &pde::PdeConfig::keep_fields)
        .def_readwrite("support_floor", &pde::PdeConfig::support_floor)
        .def_readwrite("nonlinear_dt_factor", &pde::PdeConfig::nonlinear_dt_factor)
        .def("validate", &pde::PdeConfig::validate);

    mod.def(
        "pde_run",
        [](const pde::PdeConfig& c) {
            pde::RunRecord r;
            {
                py::gil_scoped_release release;
                r = pde::integrate(c);
            }
            return run_dict(r);
        },
        py::arg("config"), "Integrate the 1-D problem; returns frame summaries and the final fields");

    mod.def(
        "lifespan_sweep",
        [](const pde::PdeConfig& c, const std::vector<double>& eps, int threads) {
            pde::LifespanRecord rec;
            {
                py::gil_scoped_release release;
                rec = pde::lifespan_sweep(c, eps, threads);
            }
            py::list entries;
            for (const auto& e : rec.entries) {
                entries.append(py::make_tuple(e.eps, e.lifespan, pde::to_string(e.reason)));
            }
            py::dict d;
            d["entries"] = entries;
            d["slope"] = rec.fit ? py::cast(rec.fit->slope) : py::none();
            d["alpha"] = rec.theory.is_power() ? py::cast(rec.theory.alpha) : py::none();
            d["gap"] = rec.gap;
            d["fit_error"] = rec.fit_error;
            return d;
        },
        py::arg("config"), py::arg("eps"), py::arg("threads") = 0);

    mod.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a tricomi-lab subcommand in-process; returns (exit_code, stdout, stderr)");
}
