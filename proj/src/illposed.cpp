#include "bsq/illposed.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/norms.hpp"

namespace bsq {

namespace {

using Real = long double;

Real sinc(Real x) {
    if (std::abs(x) < 1e-4L) {
        const Real x2 = x * x;
        return 1.0L - x2 / 6.0L + x2 * x2 / 120.0L;
    }
    return std::sin(x) / x;
}

/// int_0^t sin((t - t') g) cos(t' w) dt' = g (cos wt - cos gt) / (g^2 - w^2).
Real J(Real t, Real g, Real w) { return 0.5L * g * t * t * sinc(0.5L * t * (g + w)) * sinc(0.5L * t * (g - w)); }

Real gamma_ext(Real xi, DispersionParams params) {
    const Real x2 = xi * xi;
    return std::abs(xi) * std::sqrt(1.0L - static_cast<Real>(params.beta()) * x2 + x2 * x2);
}

Real kernel_ext(Real t, Real xi, Real xi1, Real xi2, DispersionParams params) {
    const Real g = gamma_ext(xi, params), g1 = gamma_ext(xi1, params), g2 = gamma_ext(xi2, params);
    return 0.5L * (J(t, g, g1 - g2) + J(t, g, g1 + g2));
}

long lattice_index(double x, double m) { return std::lround(x * m); }

}  // namespace

double kernel_K(double t, double xi, double xi1, double xi2, DispersionParams params) {
    return static_cast<double>(kernel_ext(t, xi, xi1, xi2, params));
}

double kernel_K(double t, double xi, double xi1, DispersionParams params) {
    return static_cast<double>(kernel_ext(t, xi, xi1, static_cast<Real>(xi) - static_cast<Real>(xi1), params));
}

double IllposedSpec::witness_time() const { return std::pow(N, -3.0 - epsilon); }

void IllposedSpec::validate() const {
    if (!(N >= 4.0) || !std::isfinite(N)) throw InvalidSpec("IllposedSpec: N must be >= 4");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidSpec("IllposedSpec: epsilon must be > 0");
    if (!(xi_resolution > 0.0 && xi_resolution <= 0.25))
        throw InvalidSpec("IllposedSpec: xi_resolution must lie in (0, 1/4]");
    if (t_quadrature_nodes < 3) throw InvalidSpec("IllposedSpec: t_quadrature_nodes must be >= 3");
    if (!std::isfinite(s)) throw InvalidSpec("IllposedSpec: s must be finite");
}

namespace {

double lattice_steps(const IllposedSpec& spec) { return std::ceil(1.0 / spec.xi_resolution - 1e-9); }

/// Indicator of [lo, hi] sampled at x with half weight at the end points.
double boxed(double x, double lo, double hi, double h) {
    const double tol = 1e-9 * h;
    if (x < lo - tol || x > hi + tol) return 0.0;
    if (std::abs(x - lo) <= tol || std::abs(x - hi) <= tol) return 0.5;
    return 1.0;
}

}  // namespace

IllposedData build_illposed_data(const IllposedSpec& spec) {
    spec.validate();
    const double m = lattice_steps(spec);
    const double h = 1.0 / m;
    const auto half = static_cast<long>(std::ceil((spec.N + 3.0) * m));
    const FrequencyGrid grid = FrequencyGrid::on_lattice(static_cast<double>(-half), h, 2 * half + 1);
    const double amp = std::pow(spec.N, -spec.s);
    const double N = spec.N;
    auto phi = SpectralField::sample(grid, [&](double x) { return Complex(amp * boxed(x, -N, -N + 1, h)); });
    auto psi = SpectralField::sample(grid, [&](double x) { return Complex(amp * boxed(x, N + 1, N + 2, h)); });
    return {std::move(phi), std::move(psi)};
}

SpectralField illposed_transform(const IllposedSpec& spec, double t) {
    return illposed_transform(build_illposed_data(spec), spec, t);
}

SpectralField illposed_transform(const IllposedData& data, const IllposedSpec& spec, double t) {
    if (!data.phi_hat.grid().same_as(data.psi_hat.grid()))
        throw InvalidArgument("illposed_transform: phi and psi must share a grid");
    const FrequencyGrid& grid = data.phi_hat.grid();
    const double m = lattice_steps(spec);
    const double h = grid.spacing();
    if (std::abs(h * m - 1.0) > 1e-9) throw InvalidArgument("illposed_transform: data grid step must be 1/m");
    const long off = lattice_index(grid.xi_min(), m);
    const auto n = static_cast<long>(grid.size());

    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (data.psi_hat[j] != Complex(0.0)) support.push_back(j);

    const auto n_out = static_cast<std::size_t>(std::lround(2.0 * m)) + 1;
    const FrequencyGrid out = FrequencyGrid::on_lattice(m, h, n_out);
    std::vector<Complex> q(n_out);
    for (std::size_t i = 0; i < n_out; ++i) {
        const double xi = out.node(i);
        const long ki = lattice_index(xi, m);
        double acc = 0.0;
        for (std::size_t j : support) {
            const long k1 = off + static_cast<long>(j);
            const long k2 = ki - k1 - off;
            if (k2 < 0 || k2 >= n) continue;
            const Complex p = data.phi_hat[static_cast<std::size_t>(k2)];
            if (p == Complex(0.0)) continue;
            const double xi1 = grid.node(j);
            const double xi2 = grid.node(static_cast<std::size_t>(k2));
            acc += h * p.real() * data.psi_hat[j].real() * kernel_K(t, xi, xi1, xi2, spec.params);
        }
        // -xi^2 / (8 i gamma) = i xi^2 / (8 gamma)
        q[i] = Complex(0.0, xi * xi / (8.0 * gamma(xi, spec.params))) * acc;
    }
    return SpectralField(out, std::move(q));
}

double illposed_quantity(const IllposedSpec& spec) { return illposed_quantity(build_illposed_data(spec), spec); }

double illposed_quantity(const IllposedData& data, const IllposedSpec& spec) {
    spec.validate();
    const double tw = spec.witness_time();
    if (!spec.sup_over_t) return hs_norm(illposed_transform(data, spec, tw), spec.s);
    double best = 0.0;
    const auto nt = static_cast<double>(spec.t_quadrature_nodes);
    for (std::size_t k = 1; k <= spec.t_quadrature_nodes; ++k) {
        const double t = 2.0 * tw * static_cast<double>(k) / nt;
        best = std::max(best, hs_norm(illposed_transform(data, spec, t), spec.s));
    }
    return best;
}

double illposed_overlap_measure(const IllposedSpec& spec, double xi) {
    const IllposedData data = build_illposed_data(spec);
    const FrequencyGrid& grid = data.phi_hat.grid();
    const double m = lattice_steps(spec);
    const double amp = std::pow(spec.N, -spec.s);
    const long off = lattice_index(grid.xi_min(), m);
    const long ki = lattice_index(xi, m);
    const auto n = static_cast<long>(grid.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const long k2 = ki - (off + static_cast<long>(j)) - off;
        if (k2 < 0 || k2 >= n) continue;
        acc += data.phi_hat[static_cast<std::size_t>(k2)].real() * data.psi_hat[j].real();
    }
    return acc * grid.spacing() / (amp * amp);
}

double illposed_predicted_exponent(double s, double epsilon) { return -2.0 * s - 6.0 - 2.0 * epsilon; }

IllposedSpec IllposedSweepTemplate::at(double N) const {
    IllposedSpec spec;
    spec.N = N;
    spec.s = s;
    spec.epsilon = epsilon;
    spec.params = params;
    spec.xi_resolution = xi_resolution;
    spec.t_quadrature_nodes = t_quadrature_nodes;
    spec.sup_over_t = sup_over_t;
    return spec;
}

ExperimentReport illposed_sweep(const IllposedSweepTemplate& tmpl, std::span<const double> Ns, std::size_t workers) {
    if (Ns.size() < 3) throw InvalidSpec("illposed_sweep: need at least 3 values of N");
    std::vector<IllposedSpec> specs;
    for (double N : Ns) {
        specs.push_back(tmpl.at(N));
        specs.back().validate();
    }
    std::vector<SweepPoint> points(specs.size());
    const std::size_t nw = std::max<std::size_t>(1, std::min(workers, specs.size()));
    if (nw == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) points[i] = {specs[i].N, illposed_quantity(specs[i])};
    } else {
        std::vector<std::future<void>> jobs;
        for (std::size_t w = 0; w < nw; ++w)
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < specs.size(); i += nw)
                    points[i] = {specs[i].N, illposed_quantity(specs[i])};
            }));
        for (auto& j : jobs) j.get();
    }

    ExperimentReport rep;
    rep.experiment = "illposed";
    rep.points = points;
    const LogLogFit fit = fit_loglog(rep.points);
    rep.fitted_slope = fit.slope;
    rep.fit_residual = fit.residual;
    rep.predicted_exponent = illposed_predicted_exponent(tmpl.s, tmpl.epsilon);
    rep.informational = tmpl.s >= -3.0 || rep.predicted_exponent <= 0.0;
    rep.pass = std::abs(fit.slope - rep.predicted_exponent) <= kIllposedSlopeTolerance;
    return rep;
}

}  // namespace bsq
