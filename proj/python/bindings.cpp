#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nhirota/experiment.hpp"
#include "nhirota/specfun.hpp"

namespace py = pybind11;
using namespace nh;

namespace {

py::array_t<cplx> to_array(const CVec& v) { return py::array_t<cplx>(v.size(), v.data()); }
py::array_t<double> to_array(const RVec& v) { return py::array_t<double>(v.size(), v.data()); }

ExperimentConfig config_from(const std::string& json_text, const std::string& base_dir) {
    return parse_config(json_text, base_dir);
}

py::dict scatter_dict(const ScatterResult& sc) {
    const ScatteringData& sd = sc.data;
    py::dict d;
    d["z"] = to_array(sd.zgrid);
    d["s11"] = to_array(sd.s11);
    d["s12"] = to_array(sd.s12);
    d["s21"] = to_array(sd.s21);
    d["s22"] = to_array(sd.s22);
    d["r"] = to_array(sd.r);
    d["rtilde"] = to_array(sd.rtilde);
    py::dict res;
    res["det"] = sc.residuals.det;
    res["sym11"] = sc.residuals.sym11;
    res["sym22"] = sc.residuals.sym22;
    res["sym12"] = sc.residuals.sym12;
    res["identity"] = sc.residuals.identity;
    d["residuals"] = res;
    py::dict rep;
    rep["pass"] = sc.report.pass;
    rep["max_im_nu"] = sc.report.max_im_nu;
    rep["min_arg_margin"] = sc.report.min_arg_margin;
    rep["winding"] = sc.report.winding ? py::object(py::int_(*sc.report.winding)) : py::object(py::none());
    rep["failures"] = sc.report.failures;
    d["report"] = rep;
    return d;
}

template <class F>
auto translate(F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw py::value_error(e.what());
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = R"pbdoc(
        Compiled core: special functions, direct scattering, leading-order asymptotics
        and the spectral evolution solver for the reverse-space nonlocal Hirota equation.
    )pbdoc";

    py::register_exception<AssumptionError>(m, "AssumptionError", PyExc_RuntimeError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("gamma", [](cplx z) { return translate([&] { return gamma_complex(z).value; }); }, py::arg("z"),
          R"pbdoc(Complex Gamma function.)pbdoc");
    m.def("rgamma", &rgamma, py::arg("z"), R"pbdoc(Reciprocal Gamma, entire.)pbdoc");
    m.def(
        "pcfd", [](cplx a, cplx k) { return parabolic_cylinder_D(a, k).value; }, py::arg("a"), py::arg("k"),
        R"pbdoc(Parabolic cylinder function D_a(k).)pbdoc");
    m.def(
        "pcfd_pair",
        [](cplx a, cplx k) {
            const auto [v, d] = parabolic_cylinder_D_pair(a, k);
            return py::make_tuple(v.value, d.value);
        },
        py::arg("a"), py::arg("k"), R"pbdoc((D_a(k), dD_a/dk).)pbdoc");

    m.def(
        "theta", [](cplx z, double xi, double alpha, double beta) { return theta(z, xi, alpha, beta); }, py::arg("z"),
        py::arg("xi"), py::arg("alpha"), py::arg("beta"));
    m.def(
        "stationary_points",
        [](double xi, double alpha, double beta) {
            return translate([&] {
                const PhaseGeometry g = stationary_points(xi, alpha, beta);
                return py::make_tuple(g.z1, g.z2);
            });
        },
        py::arg("xi"), py::arg("alpha"), py::arg("beta"), R"pbdoc(Ordered stationary points (z1, z2).)pbdoc");

    m.def(
        "scatter",
        [](const std::string& json_text, const std::string& base_dir) {
            return translate([&] { return scatter_dict(compute_scatter(config_from(json_text, base_dir))); });
        },
        py::arg("config"), py::arg("base_dir") = ".",
        R"pbdoc(Scattering data and assumption report for a JSON experiment config.)pbdoc");

    m.def(
        "asymptotics",
        [](const std::string& json_text, const std::string& base_dir) {
            return translate([&] {
                const ExperimentConfig cfg = config_from(json_text, base_dir);
                const ScatterResult sc = compute_scatter(cfg);
                py::list rows;
                for (const auto& [x, t] : cfg.evaluation_points()) {
                    const PhaseGeometry g = stationary_points(x / t, cfg.model.alpha, cfg.model.beta);
                    AsymptoticOptions opt;
                    opt.strict_paper_constants = cfg.strict_paper_constants;
                    const AsymptoticEvaluation e = leading_order_q(sc.data, nu_profile(sc.data, g), g, x, t, opt);
                    rows.append(py::make_tuple(x, t, e.q_leading, e.xi_order));
                }
                return rows;
            });
        },
        py::arg("config"), py::arg("base_dir") = ".", R"pbdoc(List of (x, t, q, xi_order).)pbdoc");

    m.def(
        "evolve",
        [](const std::string& json_text, const std::string& base_dir) {
            return translate([&] {
                const ExperimentConfig cfg = config_from(json_text, base_dir);
                Trajectory tr;
                {
                    py::gil_scoped_release nogil;
                    tr = evolve(make_datum(cfg.datum, cfg.evolution.grid), cfg.evolution);
                }
                py::dict d;
                d["x"] = to_array(cfg.evolution.grid.points());
                RVec times;
                py::list frames;
                for (const auto& f : tr.frames) {
                    times.push_back(f.time);
                    frames.append(to_array(f.samples));
                }
                d["t"] = to_array(times);
                d["u"] = frames;
                d["quasi_power"] = to_array(tr.quasi_power);
                return d;
            });
        },
        py::arg("config"), py::arg("base_dir") = ".", R"pbdoc(Spectral evolution; frames at the output times.)pbdoc");

    m.def(
        "validate",
        [](const std::string& json_text, std::uint64_t seed) {
            return translate([&] {
                const ExperimentConfig cfg = config_from(json_text, ".");
                py::list out;
                for (const auto& l : run_validation_suite(cfg, seed)) out.append(py::make_tuple(l.name, l.pass, l.value, l.tol));
                return out;
            });
        },
        py::arg("config"), py::arg("seed") = 0, R"pbdoc(Invariant suite as (name, pass, value, tol) tuples.)pbdoc");
}
