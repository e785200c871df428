#include "bsq/bilinear.hpp"

#include <cmath>
#include <future>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/norms.hpp"
#include "bsq/spectral.hpp"

namespace bsq {

double strip_exponent_for(double a) {
    if (!(a < 1.0)) throw InvalidArgument("strip_exponent_for: a must be < 1");
    return (1.0 - 2.0 * a) / (1.0 - a);
}

double bilinear_predicted_exponent(double s, double a, double alpha) {
    return -(2.0 + alpha) * s - (2.0 - alpha) * a - 1.5 * alpha;
}

double bilinear_threshold(double a, double alpha) { return -(1.5 * alpha + (2.0 - alpha) * a) / (alpha + 2.0); }

double BilinearSpec::strip_width() const { return std::pow(N, -alpha); }

void BilinearSpec::validate() const {
    if (!(N >= 4.0) || !std::isfinite(N)) throw InvalidSpec("BilinearSpec: N must be >= 4");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidSpec("BilinearSpec: alpha must lie in (0, 1]");
    if (!(tau_resolution > 0.0 && tau_resolution <= 0.125))
        throw InvalidSpec("BilinearSpec: tau_resolution must lie in (0, 1/8]");
    if (!(xi_resolution > 0.0 && xi_resolution <= strip_width() / 8.0 * (1.0 + 1e-12)))
        throw InvalidSpec("BilinearSpec: xi_resolution must lie in (0, N^-alpha / 8]");
    if (!std::isfinite(s) || !std::isfinite(b) || !std::isfinite(a)) throw InvalidSpec("BilinearSpec: non-finite index");
}

CounterexamplePair build_counterexample_pair(const BilinearSpec& spec) {
    spec.validate();
    const double w = spec.strip_width();
    const auto m = static_cast<std::size_t>(std::ceil(w / spec.xi_resolution * (1.0 - 1e-12)));
    const double h = w / static_cast<double>(m);
    const double ht = spec.tau_resolution;
    const FrequencyGrid axis = FrequencyGrid::on_lattice(spec.N / h + 0.5, h, m);

    std::vector<BandColumn> cols(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double r = rho(axis.node(j), spec.params);
        const auto lo = static_cast<long>(std::ceil((r - 1.0) / ht - 1e-9));
        const auto hi = static_cast<long>(std::floor((r + 1.0) / ht + 1e-9));
        cols[j].first = lo;
        cols[j].values.assign(static_cast<std::size_t>(hi - lo + 1), Complex(1.0));
    }
    BandedField f(axis, ht, std::move(cols));
    BandedField g = f.reflected();
    return {std::move(f), std::move(g)};
}

namespace {

std::vector<BandColumn> scaled_columns(const BandedField& conv, DispersionParams params) {
    std::vector<BandColumn> cols;
    cols.reserve(conv.n_columns());
    for (std::size_t j = 0; j < conv.n_columns(); ++j) {
        BandColumn c = conv.column(j);
        const double factor = 0.5 * multiplier(conv.xi_axis().node(j), params);
        for (auto& v : c.values) v *= factor;
        cols.push_back(std::move(c));
    }
    return cols;
}

}  // namespace

double bilinear_lhs(const BandedField& u_hat, const BandedField& v_hat, double s, double a, DispersionParams params) {
    const BandedField conv = convolve_banded(u_hat, v_hat);
    const BandedField weighted(conv.xi_axis(), conv.tau_step(), scaled_columns(conv, params));
    return xsb_norm(weighted, s, -a, params, WeightVariant::rho);
}

double bilinear_lhs(const SpaceTimeField& u_hat, const SpaceTimeField& v_hat, double s, double a,
                    DispersionParams params) {
    const SpaceTimeField conv = convolve2d(u_hat, v_hat);
    const auto& grid = conv.grid();
    std::vector<Complex> vals(conv.values().begin(), conv.values().end());
    for (std::size_t i = 0; i < conv.n_tau(); ++i)
        for (std::size_t j = 0; j < conv.n_xi(); ++j)
            vals[i * conv.n_xi() + j] *= 0.5 * multiplier(grid.xi_axis.node(j), params);
    return xsb_norm(SpaceTimeField(grid, std::move(vals)), s, -a, params, WeightVariant::rho);
}

double bilinear_ratio(const BilinearSpec& spec) {
    const auto pair = build_counterexample_pair(spec);
    const auto u = xsb_apply_weight(pair.f, spec.s, spec.b, spec.params, WeightVariant::rho, WeightAction::divide);
    const auto v = xsb_apply_weight(pair.g, spec.s, spec.b, spec.params, WeightVariant::rho, WeightAction::divide);
    const double lhs = bilinear_lhs(u, v, spec.s, spec.a, spec.params);
    const double nu = xsb_norm(u, spec.s, spec.b, spec.params, WeightVariant::rho);
    const double nv = xsb_norm(v, spec.s, spec.b, spec.params, WeightVariant::rho);
    return lhs / (nu * nv);
}

double BilinearSweepTemplate::resolved_alpha() const { return alpha > 0.0 ? alpha : strip_exponent_for(a); }

BilinearSpec BilinearSweepTemplate::at(double N) const {
    if (xi_cells < 8) throw InvalidSpec("BilinearSweepTemplate: xi_cells must be >= 8");
    BilinearSpec spec;
    spec.N = N;
    spec.alpha = resolved_alpha();
    spec.s = s;
    spec.b = b;
    spec.a = a;
    spec.params = params;
    spec.tau_resolution = tau_resolution;
    spec.xi_resolution = std::pow(N, -spec.alpha) / static_cast<double>(xi_cells);
    return spec;
}

ExperimentReport bilinear_ratio_sweep(const BilinearSweepTemplate& tmpl, std::span<const double> Ns,
                                      std::size_t workers) {
    if (Ns.size() < 3) throw InvalidSpec("bilinear_ratio_sweep: need at least 3 values of N");
    std::vector<BilinearSpec> specs;
    for (double N : Ns) {
        specs.push_back(tmpl.at(N));
        specs.back().validate();
    }

    std::vector<SweepPoint> points(specs.size());
    const std::size_t nw = std::max<std::size_t>(1, std::min(workers, specs.size()));
    if (nw == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) points[i] = {specs[i].N, bilinear_ratio(specs[i])};
    } else {
        std::vector<std::future<void>> jobs;
        for (std::size_t w = 0; w < nw; ++w)
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < specs.size(); i += nw) points[i] = {specs[i].N, bilinear_ratio(specs[i])};
            }));
        for (auto& j : jobs) j.get();
    }

    ExperimentReport rep;
    rep.experiment = "bilinear";
    rep.points = points;
    const LogLogFit fit = fit_loglog(rep.points);
    rep.fitted_slope = fit.slope;
    rep.fit_residual = fit.residual;
    const double alpha = tmpl.resolved_alpha();
    rep.predicted_exponent = bilinear_predicted_exponent(tmpl.s, tmpl.a, alpha);
    rep.informational = tmpl.s >= -0.5;
    rep.pass = fit.slope >= rep.predicted_exponent - kBilinearSlopeSlack;
    return rep;
}

}  // namespace bsq
