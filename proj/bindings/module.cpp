// Python bindings for the core operations: per-strain kinetics, the
// front-selection sequence, PDE simulation, measurement, and sweeps.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strainwave/experiments.hpp"
#include "strainwave/jsonio.hpp"

namespace py = pybind11;
using namespace strainwave;
namespace kin = strainwave::kinetics;

namespace {

ModelSpec model_from_lists(const std::vector<std::tuple<double, double, double>>& strains,
                           double s0) {
    ModelSpec m;
    m.s0 = s0;
    for (const auto& [d, alpha, mu] : strains) m.strains.push_back({d, alpha, mu});
    validate(m);
    return m;
}

py::object outcome_to_dict(const seq::PropagationOutcome& o) {
    // round-trip through the JSON layer so Python sees the same shape as files
    return py::module_::import("json").attr("loads")(io::outcome_to_json(o).dump());
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "spatial multi-strain epidemic fronts (C++ core)";

    py::register_exception<ParamError>(mod, "ParamError", PyExc_ValueError);
    py::register_exception<ContractError>(mod, "ContractError", PyExc_ValueError);
    py::register_exception<NumericalError>(mod, "NumericalError", PyExc_RuntimeError);

    py::class_<StrainParams>(mod, "StrainParams")
        .def(py::init<>())
        .def(py::init([](double d, double alpha, double mu) {
                 StrainParams p{d, alpha, mu};
                 validate(p);
                 return p;
             }),
             py::arg("d"), py::arg("alpha"), py::arg("mu"))
        .def_readwrite("d", &StrainParams::d)
        .def_readwrite("alpha", &StrainParams::alpha)
        .def_readwrite("mu", &StrainParams::mu)
        .def("__repr__", [](const StrainParams& p) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "StrainParams(d=%g, alpha=%g, mu=%g)", p.d,
                          p.alpha, p.mu);
            return std::string(buf);
        });

    mod.def(
        "speed",
        [](const StrainParams& p, double sigma) {
            validate(p);
            validate_level(sigma);
            return kin::speed(p, sigma);
        },
        py::arg("params"), py::arg("sigma"),
        "Invasion front speed into a uniform susceptible level sigma.");

    mod.def(
        "asymptotic_value",
        [](const StrainParams& p, double sigma) -> py::object {
            validate(p);
            validate_level(sigma);
            const auto v = kin::asymptotic_value(p, sigma);
            if (!v) return py::none();
            return py::float_(*v);
        },
        py::arg("params"), py::arg("sigma"),
        "Total infection burden behind a front, or None below threshold.");

    mod.def(
        "depleted_level",
        [](const StrainParams& p, double sigma) {
            validate(p);
            validate_level(sigma);
            const auto v = kin::asymptotic_value(p, sigma);
            if (!v) return sigma;
            return kin::depleted_level(p, sigma, *v);
        },
        py::arg("params"), py::arg("sigma"),
        "Susceptible level left behind after one strain passes.");

    mod.def(
        "basic_reproduction_number",
        [](const StrainParams& p, double sigma) {
            validate(p);
            validate_level(sigma);
            return kin::basic_reproduction_number(p, sigma);
        },
        py::arg("params"), py::arg("sigma"));

    mod.def(
        "compute_sequence",
        [](const std::vector<std::tuple<double, double, double>>& strains, double s0,
           double tie_tol) {
            return outcome_to_dict(seq::compute_sequence(model_from_lists(strains, s0), tie_tol));
        },
        py::arg("strains"), py::arg("s0"), py::arg("tie_tol") = 1e-9,
        "Propagation order, speeds, and post-front levels.\n"
        "strains: list of (d, alpha, mu) triples. Returns a dict.");

    mod.def(
        "simulate",
        [](const std::vector<std::tuple<double, double, double>>& strains, double s0,
           double half_length, int n_cells, double t_end, double snapshot_interval,
           const std::string& scheme) {
            const auto m = model_from_lists(strains, s0);
            sim::SimConfig cfg;
            cfg.grid.half_length = half_length;
            cfg.grid.n_cells = n_cells;
            cfg.t_end = t_end;
            cfg.snapshot_interval = snapshot_interval;
            if (scheme == "strang-split")
                cfg.scheme = sim::Scheme::strang_split;
            else if (scheme != "explicit-euler")
                throw ParamError("scheme: expected explicit-euler or strang-split");
            const auto init = sim::InitialData::defaults(m, cfg.grid);
            const auto snaps = sim::run(m, cfg, init);
            py::list out;
            for (const auto& s : snaps) {
                py::dict d;
                d["t"] = s.t;
                d["S"] = s.S;
                d["I"] = s.I;
                d["R"] = s.R;
                d["mass"] = s.diag.mass;
                d["identity_residual"] = s.diag.identity_residual;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("strains"), py::arg("s0"), py::arg("half_length") = 100.0,
        py::arg("n_cells") = 800, py::arg("t_end") = 50.0,
        py::arg("snapshot_interval") = 5.0, py::arg("scheme") = "explicit-euler",
        "Integrate the PDE system from default seeds; returns snapshot dicts.");

    mod.def(
        "verify",
        [](const std::vector<std::tuple<double, double, double>>& strains, double s0,
           double half_length, int n_cells, double t_end, double burn_in) {
            const auto m = model_from_lists(strains, s0);
            sim::SimConfig cfg;
            cfg.grid.half_length = half_length;
            cfg.grid.n_cells = n_cells;
            cfg.t_end = t_end;
            cfg.snapshot_interval = t_end / 40.0;
            const auto init = sim::InitialData::defaults(m, cfg.grid);
            metrics::MeasureSettings ms;
            ms.burn_in = burn_in > 0 ? burn_in : 0.3 * t_end;
            const auto rep = experiments::verify_theorem1(m, cfg, init, ms);
            return py::module_::import("json").attr("loads")(
                io::verify_report_to_json(rep).dump());
        },
        py::arg("strains"), py::arg("s0"), py::arg("half_length") = 100.0,
        py::arg("n_cells") = 800, py::arg("t_end") = 50.0, py::arg("burn_in") = 0.0,
        "Simulate, measure fronts, and compare against the predicted cascade.");

    mod.def(
        "sweep",
        [](std::tuple<double, double, double> trait1, std::tuple<double, double, double> trait2,
           double s0_min, double s0_max, int points, int jobs) {
            auto mk = [](const std::tuple<double, double, double>& t) {
                StrainParams p{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
                validate(p);
                return p;
            };
            experiments::SweepOptions opt;
            opt.points = points;
            opt.jobs = jobs;
            const auto res =
                experiments::sweep_corollary3(mk(trait1), mk(trait2), s0_min, s0_max, opt);
            py::dict out;
            out["constants"] =
                py::module_::import("json").attr("loads")(io::sweep_constants_to_json(res).dump());
            py::list pts;
            for (const auto& p : res.points) {
                py::dict row;
                row["s0"] = p.s0;
                row["regime"] = experiments::regime_name(p.closed_form);
                row["structural"] = experiments::regime_name(p.structural);
                row["s_infinity"] = p.s_infinity;
                row["agree"] = p.agree;
                pts.append(std::move(row));
            }
            out["points"] = std::move(pts);
            return out;
        },
        py::arg("trait1"), py::arg("trait2"), py::arg("s0_min"), py::arg("s0_max"),
        py::arg("points") = 200, py::arg("jobs") = 1,
        "Regime classification across initial susceptible levels for two traits.");

    mod.attr("__version__") = "0.1.0";
}
