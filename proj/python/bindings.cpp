#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boussinesq/banded.hpp"
#include "boussinesq/errors.hpp"
#include "boussinesq/io.hpp"

namespace py = pybind11;
using namespace boussinesq;

namespace {

ParamSet params_from(const py::object& spec) {
    if (py::isinstance<py::str>(spec)) return resolve_params(nlohmann::json(spec.cast<std::string>()));
    const auto t = spec.cast<std::tuple<double, double, double>>();
    return ParamSet{"custom", std::get<0>(t), std::get<1>(t), std::get<2>(t), 0.0, 0.0, ErrorKind::relative};
}

ErrorKind kind_from(const std::string& text) {
    auto k = parse_error_kind(text);
    if (!k) throw ConfigError("error kind must be 'rel' or 'abs'");
    return *k;
}

py::dict param_dict(const ParamSet& p) {
    py::dict d;
    d["name"] = p.name;
    d["alpha"] = p.alpha_t;
    d["beta"] = p.beta_t;
    d["gamma"] = p.gamma_t;
    d["k_min"] = p.k_min;
    d["k_max"] = p.k_max;
    d["kind"] = std::string(to_string(p.error_kind));
    return d;
}

Scenario scenario_from(const std::string& name) {
    auto s = builtin_scenario(name);
    if (!s) throw ConfigError("unknown scenario '" + name + "'");
    return *s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entropy-stable Boussinesq solver core";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<BlowUp>(m, "BlowUp", base.ptr());
    py::register_exception<ComplexRoots>(m, "ComplexRoots", base.ptr());
    py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
    py::register_exception<AlphaNotZero>(m, "AlphaNotZero", base.ptr());
    py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
    py::register_exception<NegativeParameter>(m, "NegativeParameter", base.ptr());
    py::register_exception<NonpositiveDepth>(m, "NonpositiveDepth", base.ptr());

    m.def("version", [] { return std::string(version()); });

    m.def("param_sets", [] {
        py::list out;
        for (const ParamSet& p : builtin_param_sets()) out.append(param_dict(p));
        return out;
    });
    m.def("omega_euler", &omega_euler, py::arg("k"));
    m.def("omega_series3", &omega_series3, py::arg("k"));
    m.def(
        "omega_model", [](double k, const py::object& params) { return omega_model(k, params_from(params)); },
        py::arg("k"), py::arg("params"), "params: set name or (alpha, beta, gamma)");
    m.def(
        "error_curve",
        [](const py::object& params, double k_min, double k_max, int n, const std::string& kind) {
            const ErrorCurve c = error_curve(params_from(params), k_min, k_max, n, kind_from(kind));
            std::vector<double> k, rel, abs;
            for (const ErrorSample& s : c.samples) {
                k.push_back(s.k);
                rel.push_back(s.rel_err);
                abs.push_back(s.abs_err);
            }
            py::dict d;
            d["max_error"] = c.max_error;
            d["argmax_k"] = c.argmax_k;
            d["k"] = k;
            d["rel_err"] = rel;
            d["abs_err"] = abs;
            return d;
        },
        py::arg("params"), py::arg("k_min"), py::arg("k_max"), py::arg("n") = default_error_samples,
        py::arg("kind") = "rel");
    m.def(
        "fit",
        [](double k_min, double k_max, const std::string& kind, bool alpha_free, int resolution, int levels) {
            FitOptions o;
            o.k_min = k_min;
            o.k_max = k_max;
            o.kind = kind_from(kind);
            o.alpha_free = alpha_free;
            o.sweep_resolution = resolution;
            o.levels = levels;
            FitResult r;
            {
                py::gil_scoped_release release;
                r = fit_params(o);
            }
            py::dict d = param_dict(r.params);
            d["max_error"] = r.max_error;
            d["max_rel_error"] = r.max_rel_error;
            return d;
        },
        py::arg("k_min"), py::arg("k_max"), py::arg("kind") = "rel", py::arg("alpha_free") = false,
        py::arg("resolution") = 41, py::arg("levels") = 5);

    m.def("solve_wavenumber", &solve_wavenumber, py::arg("omega"), py::arg("d0"), py::arg("g") = standard_gravity);
    m.def(
        "shuffle_residual",
        [](const Field& d, const Field& v, const Field& b, double g) {
            const ShuffleCheck c = shuffle_check(State::from_velocity(d, v), Bathymetry{b, 0.0}, g);
            return max_abs(c.residual) / c.max_term;
        },
        py::arg("d"), py::arg("v"), py::arg("b"), py::arg("g") = standard_gravity,
        "max relative residual of the shuffle identity");
    m.def(
        "cyclic_banded_solve",
        [](const std::vector<std::vector<double>>& bands, const Field& rhs) {
            if (bands.size() % 2 == 0) throw std::invalid_argument("need an odd number of bands");
            const int bw = static_cast<int>(bands.size() / 2);
            CyclicBandedMatrix A(rhs.size(), bw);
            for (int o = -bw; o <= bw; ++o) {
                const auto& band = bands[static_cast<std::size_t>(o + bw)];
                if (band.size() != rhs.size()) throw std::invalid_argument("band length must equal len(rhs)");
                for (std::size_t i = 0; i < rhs.size(); ++i) A.at(i, o) = band[i];
            }
            return cyclic_banded_solve(A, rhs);
        },
        py::arg("bands"), py::arg("rhs"), "bands[j][i] is the entry at (i, i + j - bw), indices periodic");

    m.def(
        "normalize_config",
        [](const std::string& text) { return to_json(parse_run_config(nlohmann::json::parse(text))).dump(); },
        py::arg("json_text"), "validate a run configuration and return it fully resolved");
    m.def(
        "run",
        [](const std::string& text) {
            const RunConfig cfg = parse_run_config(nlohmann::json::parse(text));
            RunOutcome out;
            {
                py::gil_scoped_release release;
                out = cmd_run(cfg);
            }
            py::dict d;
            d["steps"] = out.result.steps;
            d["final_time"] = out.result.reports.back().t;
            d["initial_mass"] = out.result.initial_mass;
            d["final_mass"] = out.result.final_mass;
            d["bundle"] = out.bundle.string();
            return d;
        },
        py::arg("json_text"), "run a configuration; writes a bundle when output_dir is set");
    m.def(
        "check",
        [](const std::string& scenario, double h) {
            py::list out;
            for (const CheckLine& l : cmd_check(scenario_from(scenario), h))
                out.append(py::make_tuple(l.name, l.value, l.tolerance, l.pass));
            return out;
        },
        py::arg("scenario"), py::arg("h"));
}
