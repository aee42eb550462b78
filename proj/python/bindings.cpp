#include "fsoturb/analytic.hpp"
#include "fsoturb/errors.hpp"
#include "fsoturb/estimate.hpp"
#include "fsoturb/modes.hpp"
#include "fsoturb/montecarlo.hpp"
#include "fsoturb/spectrum.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fsoturb;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict pdf_dict(const EmpiricalPdf& pdf) {
    py::dict d;
    d["edges"] = to_array(pdf.edges);
    d["density"] = to_array(pdf.density);
    d["count"] = pdf.count;
    return d;
}

ModeFilter make_filter(double w, const std::string& kind) { return {filter_kind_from_string(kind), w}; }

SimConfig make_config(const std::string& order, std::uint64_t samples, std::uint64_t seed, bool tracking,
                      const std::string& gh_coupling, const std::string& engine, int bins, unsigned threads) {
    SimConfig c;
    c.order = order_from_string(order);
    c.samples = samples;
    c.seed = seed;
    c.tracking = tracking;
    c.gh_coupling = gh_coupling_from_string(gh_coupling);
    c.engine = engine_from_string(engine);
    c.histogram.bins = bins;
    c.threads = threads;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Turbulence-induced loss and modal cross-talk statistics for free-space optical channels";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<DistortionVariances>(m, "DistortionVariances")
        .def_readonly("c_a", &DistortionVariances::c_a)
        .def_readonly("c_g", &DistortionVariances::c_g)
        .def_readonly("c_s", &DistortionVariances::c_s)
        .def("__repr__", [](const DistortionVariances& v) {
            return "DistortionVariances(c_a=" + std::to_string(v.c_a) + ", c_g=" + std::to_string(v.c_g) +
                   ", c_s=" + std::to_string(v.c_s) + ")";
        });

    m.def("vartheta", &vartheta_constant);
    m.def("phase_psd", [](double r0, double l0, double L0, double f) { return phase_psd({r0, l0, L0}, f); },
          py::arg("r0"), py::arg("l0"), py::arg("L0"), py::arg("f"));
    m.def("mode_filter_value",
          [](double w, double f, const std::string& kind) { return mode_filter_value(make_filter(w, kind), f); },
          py::arg("w"), py::arg("f"), py::arg("kind") = "intensity-spectrum");
    m.def(
        "compute_variances",
        [](double r0, double l0, double L0, double w, const std::string& kind, const std::string& coupling) {
            return compute_variances({r0, l0, L0}, make_filter(w, kind), gh_coupling_from_string(coupling));
        },
        py::arg("r0"), py::arg("l0"), py::arg("L0"), py::arg("w"), py::arg("kind") = "intensity-spectrum",
        py::arg("gh_coupling") = "independent");

    m.def("t00_first_order", [](double w, double a, double b) { return t00_first_order({w}, a, b); },
          py::arg("w"), py::arg("a"), py::arg("b"));
    m.def(
        "t00_second_order",
        [](double w, double a, double b, double g, double h, double s) {
            return t00_second_order({w}, {0.0, a, b, g, h, s});
        },
        py::arg("w"), py::arg("a"), py::arg("b"), py::arg("g"), py::arg("h"), py::arg("s"));
    m.def("crosstalk_first_order", &crosstalk_first_order, py::arg("level"), py::arg("xi"));
    m.def(
        "grid_overlap",
        [](std::pair<int, int> tx, std::pair<int, int> rx, double w, double a, double b, double g, double h,
           double s, int points, const std::string& basis) {
            const Basis bs = basis == "lg" ? Basis::LaguerreGauss : Basis::HermiteGauss;
            GridSpec grid;
            grid.points = points;
            return grid_overlap({bs, tx.first, tx.second}, {bs, rx.first, rx.second}, {w},
                                PhaseScreen::second_order({0.0, a, b, g, h, s}), grid);
        },
        py::arg("tx"), py::arg("rx"), py::arg("w"), py::arg("a") = 0.0, py::arg("b") = 0.0, py::arg("g") = 0.0,
        py::arg("h") = 0.0, py::arg("s") = 0.0, py::arg("points") = 512, py::arg("basis") = "hg");

    m.def(
        "lambert_w",
        [](double x, const std::string& branch) {
            return lambert_w(branch == "lower" ? LambertBranch::Lower : LambertBranch::Principal, x);
        },
        py::arg("x"), py::arg("branch") = "principal");
    m.def("pdf_fundamental", &pdf_fundamental, py::arg("gamma"), py::arg("t"));
    m.def("pdf_crosstalk", &pdf_crosstalk, py::arg("level"), py::arg("w2_c_a"), py::arg("t"));
    m.def("xi_roots", &xi_roots, py::arg("level"), py::arg("t"));
    m.def("t_n_max", &t_n_max, py::arg("level"));

    m.def(
        "simulate_transmittance",
        [](const DistortionVariances& v, double w, const std::string& order, std::uint64_t samples,
           std::uint64_t seed, bool tracking, const std::string& gh, const std::string& engine, int bins,
           unsigned threads) {
            DistortionVariances vars = v;
            vars.gh_coupling = gh_coupling_from_string(gh);
            const auto cfg = make_config(order, samples, seed, tracking, gh, engine, bins, threads);
            TransmittanceResult r;
            {
                py::gil_scoped_release release;
                r = simulate_transmittance(vars, {w}, cfg);
            }
            py::dict d = pdf_dict(r.pdf);
            d["samples"] = to_array(r.samples);
            d["mean"] = r.mean;
            return d;
        },
        py::arg("variances"), py::arg("w"), py::arg("order") = "second", py::arg("samples") = 100000,
        py::arg("seed") = 1, py::arg("tracking") = false, py::arg("gh_coupling") = "independent",
        py::arg("engine") = "closed-form", py::arg("bins") = 100, py::arg("threads") = 0);
    m.def(
        "simulate_crosstalk",
        [](const DistortionVariances& v, double w, int max_level, const std::string& order, std::uint64_t samples,
           std::uint64_t seed, unsigned threads) {
            const auto cfg = make_config(order, samples, seed, false, "independent", "closed-form", 100, threads);
            CrosstalkResult r;
            {
                py::gil_scoped_release release;
                r = simulate_crosstalk(v, {w}, cfg, max_level);
            }
            py::list levels;
            for (std::size_t n = 0; n < r.levels.size(); ++n) {
                py::dict d = pdf_dict(r.levels[n]);
                d["samples"] = to_array(r.samples[n]);
                d["mean"] = r.means[n];
                levels.append(d);
            }
            return levels;
        },
        py::arg("variances"), py::arg("w"), py::arg("max_level"), py::arg("order") = "first",
        py::arg("samples") = 100000, py::arg("seed") = 1, py::arg("threads") = 0);

    m.def(
        "fit_power_law",
        [](const std::vector<double>& samples) {
            const auto fit = fit_power_law(TransmittanceSeries::from_raw(samples));
            return py::make_tuple(fit.gamma, fit.std_error);
        },
        py::arg("samples"));
    m.def("c_a_from_gamma", [](double gamma, double w) { return c_a_from_gamma(gamma, {w}); }, py::arg("gamma"),
          py::arg("w"));
    m.def(
        "r0_from_c_a",
        [](double c_a, double l0, double L0, double w, const std::string& kind) {
            return r0_from_c_a(c_a, l0, L0, make_filter(w, kind));
        },
        py::arg("c_a"), py::arg("l0"), py::arg("L0"), py::arg("w"), py::arg("kind") = "intensity-spectrum");
    m.def(
        "estimate_fried",
        [](const std::vector<double>& samples, double w, double l0, double L0, const std::string& kind,
           double confidence) {
            const auto est = estimate_fried(TransmittanceSeries::from_raw(samples), {w}, l0, L0,
                                            make_filter(w, kind), confidence);
            py::dict d;
            d["gamma"] = est.gamma;
            d["gamma_se"] = est.gamma_std_error;
            d["c_a"] = est.c_a;
            d["r0"] = est.r0;
            d["ci_lo"] = est.r0_lo;
            d["ci_hi"] = est.r0_hi;
            d["samples"] = est.n;
            d["rejected_count"] = est.rejected;
            return d;
        },
        py::arg("samples"), py::arg("w"), py::arg("l0"), py::arg("L0"), py::arg("kind") = "intensity-spectrum",
        py::arg("confidence") = 0.95);
}
