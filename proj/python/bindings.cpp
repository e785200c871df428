#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bsq/bilinear.hpp"
#include "bsq/checks.hpp"
#include "bsq/dispersion.hpp"
#include "bsq/errors.hpp"
#include "bsq/evolution.hpp"
#include "bsq/illposed.hpp"
#include "bsq/integrals.hpp"
#include "bsq/norms.hpp"

namespace py = pybind11;
using namespace bsq;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

ModeVector to_modes(const CArray& a) {
    if (a.ndim() != 1) throw InvalidArgument("expected a 1-d array of mode coefficients");
    return ModeVector(a.data(), a.data() + a.size());
}

CArray to_array(const ModeVector& v) {
    CArray a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

/// Trajectory as a dict of numpy arrays: times (n,), u_hat and v_hat (n, modes).
py::dict trajectory_dict(const Trajectory& t) {
    const auto n = static_cast<py::ssize_t>(t.states.size());
    const auto m = n ? static_cast<py::ssize_t>(t.states.front().u_hat.size()) : 0;
    py::array_t<double> times(n);
    py::array_t<std::complex<double>> u({n, m}), v({n, m});
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto& s = t.states[static_cast<std::size_t>(i)];
        times.mutable_at(i) = s.time;
        std::copy(s.u_hat.begin(), s.u_hat.end(), u.mutable_data(i, 0));
        std::copy(s.v_hat.begin(), s.v_hat.end(), v.mutable_data(i, 0));
    }
    py::dict d;
    d["times"] = times;
    d["u_hat"] = u;
    d["v_hat"] = v;
    d["iterations"] = t.iterations;
    d["residuals"] = t.residuals;
    return d;
}

py::dict report_dict(const ExperimentReport& r) {
    py::dict d;
    py::list pts;
    for (const auto& p : r.points) pts.append(py::make_tuple(p.N, p.value));
    d["experiment"] = r.experiment;
    d["points"] = pts;
    d["fitted_slope"] = r.fitted_slope;
    d["fit_residual"] = r.fit_residual;
    d["predicted_exponent"] = r.predicted_exponent;
    d["pass"] = r.pass;
    d["informational"] = r.informational;
    d["reliable"] = r.reliable();
    return d;
}

SolverConfig solver_config(double T, std::size_t time_nodes, double picard_tol, std::size_t max_iters, double dealias,
                           double s) {
    SolverConfig c;
    c.T = T;
    c.n_time_nodes = time_nodes;
    c.picard_tol = picard_tol;
    c.max_picard_iters = max_iters;
    c.dealias_fraction = dealias;
    c.sobolev_s = s;
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sixth-order Boussinesq spectral solver and norm-growth probes";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> no_contraction;
    no_contraction.call_once_and_store_result(
        [&] { return py::exception<NoContraction>(m, "NoContraction", PyExc_RuntimeError); });
    py::register_exception<Instability>(m, "Instability", PyExc_RuntimeError);
    py::register_exception<InvalidSpec>(m, "InvalidSpec", PyExc_ValueError);
    py::register_exception<SupportOverflow>(m, "SupportOverflow", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NoContraction& e) {
            const py::object& type = no_contraction.get_stored();
            py::object inst = type(e.what());
            inst.attr("previous_residual") = e.previous_residual();
            inst.attr("last_residual") = e.last_residual();
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    auto P = [](int beta) { return DispersionParams(beta); };

    m.def("gamma", [P](double xi, int beta) { return gamma(xi, P(beta)); }, py::arg("xi"), py::arg("beta") = 1);
    m.def("rho", [P](double xi, int beta) { return rho(xi, P(beta)); }, py::arg("xi"), py::arg("beta") = 1);
    m.def("multiplier", [P](double xi, int beta) { return multiplier(xi, P(beta)); }, py::arg("xi"),
          py::arg("beta") = 1);
    m.def("bracket", &bracket, py::arg("x"));
    m.def("symbol_equivalence_ratio", [P](double x, double y, int beta) { return symbol_equivalence_ratio(x, y, P(beta)); },
          py::arg("x"), py::arg("y"), py::arg("beta") = 1);
    m.def("kernel_K", [P](double t, double xi, double xi1, double xi2, int beta) { return kernel_K(t, xi, xi1, xi2, P(beta)); },
          py::arg("t"), py::arg("xi"), py::arg("xi1"), py::arg("xi2"), py::arg("beta") = 1);

    m.def("gaussian_band_data",
          [](double period, std::size_t modes, double target_norm, double s, double width, double cutoff) {
              return to_array(gaussian_band_data(TorusGrid(period, modes), target_norm, s, width, cutoff));
          },
          py::arg("period"), py::arg("modes"), py::arg("target_norm"), py::arg("s") = 0.0, py::arg("width") = 0.4,
          py::arg("cutoff") = 2.0);
    m.def("hs_norm",
          [](double period, const CArray& c, double s) {
              const auto v = to_modes(c);
              return hs_norm(TorusGrid(period, v.size()), v, s);
          },
          py::arg("period"), py::arg("coeffs"), py::arg("s"));
    m.def("linear_evolve",
          [P](double period, const CArray& phi, const CArray& psi, double t, int beta) {
              const auto a = to_modes(phi), b = to_modes(psi);
              const auto st = linear_evolve(a, b, t, TorusGrid(period, a.size()), P(beta));
              return py::make_tuple(to_array(st.u_hat), to_array(st.v_hat));
          },
          py::arg("period"), py::arg("phi"), py::arg("psi"), py::arg("t"), py::arg("beta") = 1);

    m.def("picard_solve",
          [P](double period, const CArray& phi, const CArray& psi, int beta, double T, std::size_t time_nodes,
              double picard_tol, std::size_t max_iters, double dealias, double s) {
              const auto a = to_modes(phi), b = to_modes(psi);
              Trajectory t;
              {
                  py::gil_scoped_release release;
                  t = picard_solve(a, b, TorusGrid(period, a.size()), P(beta),
                                   solver_config(T, time_nodes, picard_tol, max_iters, dealias, s));
              }
              return trajectory_dict(t);
          },
          py::arg("period"), py::arg("phi"), py::arg("psi"), py::arg("beta") = 1, py::arg("T") = 0.5,
          py::arg("time_nodes") = 201, py::arg("picard_tol") = 1e-13, py::arg("max_iters") = 50,
          py::arg("dealias") = 2.0 / 3.0, py::arg("s") = 0.0);
    m.def("step_oracle_solve",
          [P](double period, const CArray& phi, const CArray& psi, int beta, double T, std::size_t time_nodes,
              std::size_t substeps, double dealias) {
              const auto a = to_modes(phi), b = to_modes(psi);
              Trajectory t;
              {
                  py::gil_scoped_release release;
                  t = step_oracle_solve(a, b, TorusGrid(period, a.size()), P(beta),
                                        solver_config(T, time_nodes, 1e-13, 50, dealias, 0.0), substeps);
              }
              return trajectory_dict(t);
          },
          py::arg("period"), py::arg("phi"), py::arg("psi"), py::arg("beta") = 1, py::arg("T") = 0.5,
          py::arg("time_nodes") = 201, py::arg("substeps") = 8, py::arg("dealias") = 2.0 / 3.0);

    m.def("bilinear_ratio_sweep",
          [P](const std::vector<double>& Ns, double s, double a, double b, double alpha, int beta, double tau_resolution,
              std::size_t xi_cells, std::size_t workers) {
              BilinearSweepTemplate t;
              t.s = s;
              t.a = a;
              t.b = b;
              t.alpha = alpha;
              t.params = P(beta);
              t.tau_resolution = tau_resolution;
              t.xi_cells = xi_cells;
              ExperimentReport r;
              {
                  py::gil_scoped_release release;
                  r = bilinear_ratio_sweep(t, Ns, workers);
              }
              return report_dict(r);
          },
          py::arg("N_list"), py::arg("s") = -0.8, py::arg("a") = 0.4, py::arg("b") = 0.55, py::arg("alpha") = 0.0,
          py::arg("beta") = 1, py::arg("tau_resolution") = 1.0 / 32.0, py::arg("xi_cells") = 32,
          py::arg("workers") = 1);
    m.def("illposed_sweep",
          [P](const std::vector<double>& Ns, double s, double epsilon, int beta, double xi_resolution,
              bool sup_over_t, std::size_t t_nodes, std::size_t workers) {
              IllposedSweepTemplate t;
              t.s = s;
              t.epsilon = epsilon;
              t.params = P(beta);
              t.xi_resolution = xi_resolution;
              t.sup_over_t = sup_over_t;
              t.t_quadrature_nodes = t_nodes;
              ExperimentReport r;
              {
                  py::gil_scoped_release release;
                  r = illposed_sweep(t, Ns, workers);
              }
              return report_dict(r);
          },
          py::arg("N_list"), py::arg("s") = -3.5, py::arg("epsilon") = 0.1, py::arg("beta") = 1,
          py::arg("xi_resolution") = 1.0 / 64.0, py::arg("sup_over_t") = false, py::arg("t_nodes") = 8,
          py::arg("workers") = 1);

    m.def("check_weighted_convolution",
          [](double lambda, double mu, double p, double q) {
              const auto c = check_weighted_convolution(lambda, mu, p, q);
              py::dict d;
              d["integral"] = c.integral;
              d["exponent"] = c.exponent;
              d["product"] = c.product;
              return d;
          },
          py::arg("lam"), py::arg("mu"), py::arg("p"), py::arg("q"));
    m.def("cubic_bracket_integral", &cubic_bracket_integral, py::arg("a0"), py::arg("a1"), py::arg("a2"), py::arg("a3"),
          py::arg("q"));

    m.def("run_checks",
          [](std::uint64_t seed, double tolerance_scale) {
              ChecksOptions o;
              o.seed = seed;
              o.tolerance_scale = tolerance_scale;
              std::vector<CheckResult> rs;
              {
                  py::gil_scoped_release release;
                  rs = run_checks(o);
              }
              py::list out;
              for (const auto& r : rs) {
                  py::dict d;
                  d["name"] = r.name;
                  d["passed"] = r.passed;
                  d["measured"] = r.measured;
                  d["threshold"] = r.threshold;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("seed") = 1, py::arg("tolerance_scale") = 1.0);
}
