#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "bsq/bilinear.hpp"
#include "bsq/errors.hpp"
#include "bsq/illposed.hpp"
#include "bsq/integrals.hpp"
#include "bsq/norms.hpp"
#include "bsq/report.hpp"
#include "bsq/spectral.hpp"
#include "oracles.hpp"

using namespace bsq;

namespace {

const DispersionParams bad(1), good(-1);

BilinearSpec small_spec(double N, double cells = 32.0) {
    BilinearSpec spec;
    spec.N = N;
    spec.alpha = 1.0 / 3.0;
    spec.xi_resolution = spec.strip_width() / cells;
    return spec;
}

double l2(const BandedField& f) { return xsb_norm(f, 0.0, 0.0, bad, WeightVariant::rho); }

BandedField scaled(const BandedField& f, double c) {
    std::vector<BandColumn> cols;
    for (std::size_t j = 0; j < f.n_columns(); ++j) {
        BandColumn col = f.column(j);
        for (auto& v : col.values) v *= c;
        cols.push_back(std::move(col));
    }
    return BandedField(f.xi_axis(), f.tau_step(), std::move(cols));
}

}  // namespace

TEST_SUITE("probes") {

TEST_CASE("log-log fit") {
    std::vector<SweepPoint> pts;
    for (double N : {10.0, 20.0, 40.0, 80.0}) pts.push_back({N, 3.0 * std::pow(N, 1.25)});
    const auto fit = fit_loglog(pts);
    CHECK(fit.slope == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    pts[1].value *= 2.0;
    CHECK(fit_loglog(pts).residual > 0.1);
    CHECK_THROWS_AS(fit_loglog(std::span(pts).first(2)), InvalidArgument);
    pts[0].value = 0.0;
    CHECK_THROWS_AS(fit_loglog(pts), InvalidArgument);
    const std::vector<SweepPoint> same{{2, 1}, {2, 2}, {2, 3}};
    CHECK_THROWS_AS(fit_loglog(same), InvalidArgument);

    ExperimentReport r;
    r.fit_residual = 0.19;
    CHECK(r.reliable());
    r.fit_residual = 0.21;
    CHECK_FALSE(r.reliable());
}

TEST_CASE("bilinear spec validation") {
    auto spec = small_spec(16);
    CHECK_NOTHROW(spec.validate());
    spec.tau_resolution = 0.2;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
    spec = small_spec(16, 4);
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
    spec = small_spec(2);
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
    spec = small_spec(16);
    spec.alpha = 1.5;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
}

TEST_CASE("counterexample support at N = 8") {
    const auto spec = small_spec(8);
    const auto pair = build_counterexample_pair(spec);
    const double w = std::cbrt(0.125);
    const double lo = rho(8.0, bad) - 1.0, hi = rho(8.0 + w, bad) + 1.0;
    for (std::size_t j = 0; j < pair.f.n_columns(); ++j) {
        const double xi = pair.f.xi_axis().node(j);
        CHECK(xi >= 8.0);
        CHECK(xi <= 8.0 + w);
        const auto& col = pair.f.column(j);
        CHECK(pair.f.tau(col.first) >= lo - 1e-12);
        CHECK(pair.f.tau(col.first + static_cast<long>(col.values.size()) - 1) <= hi + 1e-12);
        for (const auto& v : col.values) CHECK(v == Complex(1.0));
    }
}

TEST_CASE("partner field is the exact reflection") {
    const auto pair = build_counterexample_pair(small_spec(8));
    const std::size_t n = pair.f.n_columns();
    REQUIRE(pair.g.n_columns() == n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& a = pair.f.column(j);
        const auto& b = pair.g.column(n - 1 - j);
        CHECK(pair.g.xi_axis().node(n - 1 - j) == -pair.f.xi_axis().node(j));
        REQUIRE(a.values.size() == b.values.size());
        CHECK(b.first == -(a.first + static_cast<long>(a.values.size()) - 1));
        for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[a.values.size() - 1 - i] == a.values[i]);
    }
}

TEST_CASE("indicator norm is sqrt 2 N^(-alpha/2)") {
    std::vector<SweepPoint> pts;
    for (double N : {8.0, 16.0, 32.0, 64.0}) {
        const auto pair = build_counterexample_pair(small_spec(N));
        const double v = l2(pair.f);
        CHECK(v == doctest::Approx(std::sqrt(2.0) * std::pow(N, -1.0 / 6.0)).epsilon(0.02));
        CHECK(l2(pair.g) == doctest::Approx(v).epsilon(1e-14));
        pts.push_back({N, v});
    }
    CHECK(std::abs(fit_loglog(pts).slope + 1.0 / 6.0) <= 0.02);
}

TEST_CASE("self-convolution of the pair is bounded below near the origin") {
    const auto spec = small_spec(8);
    const auto pair = build_counterexample_pair(spec);
    const auto conv = convolve_banded(pair.f, pair.g);
    const double w = spec.strip_width();
    const double slope = 3.0 * 64.0 - 0.5;  // rho'(N)
    double least = std::numeric_limits<double>::infinity();
    std::size_t visited = 0;
    for (std::size_t j = 0; j < conv.n_columns(); ++j) {
        const double xi = conv.xi_axis().node(j);
        if (xi < w / 16 || xi > w / 4) continue;
        const auto& col = conv.column(j);
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            const double tau = conv.tau(col.first + static_cast<long>(i));
            if (std::abs(tau - slope * xi) > 0.5) continue;
            least = std::min(least, col.values[i].real());
            ++visited;
        }
    }
    REQUIRE(visited > 100);
    CHECK(least >= 0.1 * w);
}

TEST_CASE("bilinear left side basics") {
    const auto pair = build_counterexample_pair(small_spec(8, 16));
    CHECK(bilinear_lhs(pair.f, scaled(pair.g, 0.0), -0.8, 0.4, bad) == 0.0);

    const double base = bilinear_lhs(pair.f, pair.g, -0.8, 0.4, bad);
    CHECK(base > 0.0);
    CHECK(bilinear_lhs(pair.g, pair.f, -0.8, 0.4, bad) == doctest::Approx(base).epsilon(1e-12));
    CHECK(bilinear_lhs(pair.f.reflected(), pair.g.reflected(), -0.8, 0.4, bad) ==
          doctest::Approx(base).epsilon(1e-12));
    double prev = std::numeric_limits<double>::infinity();
    for (double a : {0.0, 0.2, 0.4, 0.45, 0.8}) {
        const double v = bilinear_lhs(pair.f, pair.g, -0.8, a, bad);
        CHECK(v <= prev * (1 + 1e-14));
        prev = v;
    }
    CHECK(bilinear_lhs(scaled(pair.f, 2.0), scaled(pair.g, 3.0), -0.8, 0.4, bad) ==
          doctest::Approx(6.0 * base).epsilon(1e-12));
}

TEST_CASE("bilinear left side where the multiplier peaks") {
    // u near xi = 1, v near xi = 0: the product lands near xi = 1 where xi^2/gamma = 1.
    const double h = 1.0 / 256.0, ht = 1.0 / 16.0;
    const SpaceTimeGrid grid{FrequencyGrid::on_lattice(-48, ht, 97), FrequencyGrid::on_lattice(-512, h, 1025)};
    auto u = SpaceTimeField::sample(grid, [&](double tau, double xi) {
        return Complex(std::abs(xi - 1.0) <= 2 * h + 1e-12 && std::abs(tau - 0.5) <= 0.5 + 1e-12 ? 1.0 : 0.0);
    });
    auto v = SpaceTimeField::sample(grid, [&](double tau, double xi) {
        return Complex(std::abs(xi) <= 2 * h + 1e-12 && std::abs(tau + 0.25) <= 0.5 + 1e-12 ? 1.0 : 0.0);
    });
    const double lhs = bilinear_lhs(u, v, 0.3, 0.4, bad);
    const auto conv = convolve2d(u, v);
    std::vector<Complex> half(conv.values().begin(), conv.values().end());
    for (auto& z : half) z *= 0.5;
    const double plain = xsb_norm(SpaceTimeField(grid, std::move(half)), 0.3, -0.4, bad, WeightVariant::rho);
    CHECK(lhs == doctest::Approx(plain).epsilon(1e-3));
    CHECK(lhs <= plain);
}

TEST_CASE("exponent arithmetic") {
    CHECK(strip_exponent_for(0.4) == doctest::Approx(1.0 / 3.0));
    CHECK(bilinear_threshold(0.4, 1.0 / 3.0) == doctest::Approx(-0.5));
    CHECK(bilinear_predicted_exponent(-0.8, 0.4, 1.0 / 3.0) == doctest::Approx(0.7));
    CHECK(bilinear_predicted_exponent(bilinear_threshold(0.3, 0.5), 0.3, 0.5) == doctest::Approx(0.0));
    CHECK(illposed_predicted_exponent(-3.5, 0.1) == doctest::Approx(0.8));
    CHECK(illposed_predicted_exponent(-4.0, 0.5) == doctest::Approx(1.0));
    CHECK(illposed_predicted_exponent(-2.0, 0.1) == doctest::Approx(-2.2));
}

TEST_CASE("bilinear ratio is stable under refinement") {
    BilinearSweepTemplate coarse;
    BilinearSweepTemplate fine = coarse;
    fine.xi_cells = 2 * coarse.xi_cells;
    fine.tau_resolution = coarse.tau_resolution / 2;
    for (double N : {16.0, 64.0}) {
        const double a = bilinear_ratio(coarse.at(N)), b = bilinear_ratio(fine.at(N));
        CHECK(std::abs(a - b) < 0.01 * b);
    }
}

TEST_CASE("bilinear sweep flags and verdicts") {
    BilinearSweepTemplate t;
    t.s = 0.5;
    const std::vector<double> Ns{16, 32, 64};
    const auto rep = bilinear_ratio_sweep(t, Ns, 2);
    CHECK(rep.informational);
    CHECK(rep.points.size() == 3);
    CHECK(rep.fitted_slope < 0.05);
    const auto serial = bilinear_ratio_sweep(t, Ns, 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(serial.points[i].value == rep.points[i].value);
    t.s = -0.8;
    CHECK_FALSE(bilinear_ratio_sweep(t, Ns).informational);
    const std::vector<double> two{16, 32};
    CHECK_THROWS_AS(bilinear_ratio_sweep(t, two), InvalidSpec);
}

TEST_CASE("ill-posedness data") {
    IllposedSpec spec;
    spec.s = 0.0;
    const auto d0 = build_illposed_data(spec);
    CHECK(hs_norm(d0.phi_hat, 0.0) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(hs_norm(d0.psi_hat, 0.0) == doctest::Approx(1.0).epsilon(0.02));

    spec.s = -3.5;
    const auto d = build_illposed_data(spec);
    const double v = hs_norm(d.phi_hat, -3.5);
    // N^-s <xi>^s runs over [(17/16)^-3.5, 1] on the support.
    CHECK(v >= std::pow(17.0 / 16.0, -3.5) * 0.9);
    CHECK(v <= 1.1);
    for (std::size_t j = 0; j < d.phi_hat.size(); ++j) CHECK(d.phi_hat[j] * d.psi_hat[j] == Complex(0.0));
    CHECK(d.phi_hat.grid().xi_min() <= -17.0);
    CHECK(d.phi_hat.grid().xi_max() >= 19.0);

    spec.epsilon = 0.0;
    CHECK_THROWS_AS(build_illposed_data(spec), InvalidSpec);
    spec = IllposedSpec{};
    spec.t_quadrature_nodes = 2;
    CHECK_THROWS_AS(spec.validate(), InvalidSpec);
}

TEST_CASE("overlap measure on the interaction interval") {
    IllposedSpec spec;
    const double h = 1.0 / 64.0;
    for (double xi = 1.5; xi <= 2.5 + 1e-12; xi += h) {
        const double m = illposed_overlap_measure(spec, xi);
        CHECK(m >= 0.5 - h);
        CHECK(std::abs(m - (1.0 - std::abs(xi - 2.0))) <= h);
    }
    CHECK(illposed_overlap_measure(spec, 0.5) == 0.0);
    CHECK(illposed_overlap_measure(spec, 3.5) == 0.0);
}

TEST_CASE("second iterate is bilinear in the data") {
    IllposedSpec spec;
    const auto d = build_illposed_data(spec);
    const double base = illposed_quantity(d, spec);
    CHECK(base == doctest::Approx(illposed_quantity(spec)).epsilon(1e-15));
    CHECK(base > 0.0);

    auto times = [](const SpectralField& f, double c) {
        std::vector<Complex> v(f.values().begin(), f.values().end());
        for (auto& z : v) z *= c;
        return SpectralField(f.grid(), std::move(v));
    };
    CHECK(illposed_quantity({times(d.phi_hat, 2.0), times(d.psi_hat, 2.0)}, spec) ==
          doctest::Approx(4.0 * base).epsilon(1e-12));
    CHECK(illposed_quantity({times(d.phi_hat, 0.0), d.psi_hat}, spec) == 0.0);
    CHECK(illposed_quantity({d.phi_hat, times(d.psi_hat, 0.0)}, spec) == 0.0);
}

TEST_CASE("ill-posedness growth from N = 16 to N = 32") {
    IllposedSpec a, b;
    b.N = 32;
    const double C = illposed_quantity(a) / std::pow(16.0, 0.8);
    const double v = illposed_quantity(b);
    CHECK(v >= C * std::pow(32.0, 0.8) / 3.0);
    CHECK(v <= C * std::pow(32.0, 0.8) * 3.0);
}

TEST_CASE("sup over the time grid dominates the witness time") {
    IllposedSpec spec;
    const double w = illposed_quantity(spec);
    spec.sup_over_t = true;
    spec.t_quadrature_nodes = 4;
    CHECK(illposed_quantity(spec) >= w * (1 - 1e-12));
}

TEST_CASE("interaction kernel examples") {
    oracle::Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const double xi = rng.uniform(-3, 3), xi1 = rng.uniform(-64, 64);
        CHECK(kernel_K(0.0, xi, xi1, bad) == 0.0);
    }
    // gamma_1 = gamma_2 = 0 at xi1 = xi2 = 0.
    for (double t : {0.1, 1.0, 4.0}) {
        const double g = gamma(2.0, bad);
        CHECK(kernel_K(t, 2.0, 0.0, 0.0, bad) == doctest::Approx((1 - std::cos(t * g)) / g).epsilon(1e-12));
    }
    // Small t: K ~ gamma t^2 / 2.
    for (double N : {16.0, 64.0}) {
        const double t = std::pow(N, -3.1);
        const double xi = 2.0, xi1 = N + 1.5;
        const double K = kernel_K(t, xi, xi1, bad);
        CHECK(K == doctest::Approx(gamma(xi, bad) * t * t / 2).epsilon(0.1));
        CHECK(K == doctest::Approx(static_cast<double>(oracle::kernel_quadrature(t, xi, xi1, xi - xi1, 1)))
                       .epsilon(1e-10));
    }
}

TEST_CASE("interaction kernel against quadrature") {
    oracle::Rng rng(12);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int beta = k % 2 ? 1 : -1;
        const double t = rng.uniform(0, 1), xi = rng.uniform(-3, 3), xi1 = rng.uniform(-64, 64);
        const double xi2 = xi - xi1;
        const double K = kernel_K(t, xi, xi1, xi2, DispersionParams(beta));
        const auto Q = oracle::kernel_quadrature(t, xi, xi1, xi2, beta);
        const double e = static_cast<double>(std::abs((K - Q) / Q));
        worst = std::max(worst, e);
    }
    MESSAGE("worst relative kernel error " << worst);
    CHECK(worst <= 1e-10);
}

TEST_CASE("weighted convolution integral") {
    const auto c = check_weighted_convolution(0, 0, 1, 1);
    CHECK(c.integral == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(c.exponent == 1.0);
    CHECK(c.product == doctest::Approx(2.0).epsilon(1e-9));
    for (double D : {0.0, 10.0, 100.0}) {
        const auto r = check_weighted_convolution(-3.0, -3.0 + D, 2, 2);
        CHECK(r.exponent == 2.0);
        CHECK(r.product <= 10.0);
        CHECK(r.product > 0.0);
    }
    // Closed form at lambda = mu: int <x>^-4 = 2/3.
    CHECK(check_weighted_convolution(5, 5, 2, 2).integral == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    oracle::Rng rng(13);
    for (int k = 0; k < 20; ++k) {
        const double l = rng.uniform(-100, 100), m = rng.uniform(-100, 100);
        const double p = rng.uniform(0.6, 3), q = rng.uniform(0.6, 3);
        CHECK(check_weighted_convolution(l, m, p, q).integral ==
              doctest::Approx(check_weighted_convolution(m, l, q, p).integral).epsilon(1e-9));
    }
    CHECK(check_weighted_convolution(0, 1, 1.5, 1).exponent == doctest::Approx(1.0));
    CHECK(check_weighted_convolution(0, 1, 0.7, 0.7).exponent == doctest::Approx(0.4));
    CHECK_THROWS_AS(check_weighted_convolution(0, 0, 0.5, 0.5), InvalidArgument);
    CHECK_THROWS_AS(check_weighted_convolution(0, 0, -1, 3), InvalidArgument);
    CHECK(weighted_convolution_battery(1, 50) <= 10.0);
}

TEST_CASE("cubic bracket integral") {
    const double I = cubic_bracket_integral(0, 0, 0, 1, 0.5);
    CHECK(std::isfinite(I));
    CHECK(I < 6.0);
    CHECK(I > 2.0);
    const double edge = cubic_bracket_integral(0, 0, 0, 1, 0.34);
    CHECK(std::isfinite(edge));
    CHECK(edge > I);
    // x -> x/2 carries (a0, a1, a2, a3) to (a0, 2a1, 4a2, 8a3) at the cost of a factor 2.
    oracle::Rng rng(14);
    for (int k = 0; k < 10; ++k) {
        const double a0 = rng.uniform(-5, 5), a1 = rng.uniform(-5, 5), a2 = rng.uniform(-5, 5);
        const double a3 = rng.uniform(1, 5) * (k % 2 ? 1 : -1);
        for (double q : {0.34, 0.5, 1.0}) {
            const double A = cubic_bracket_integral(a0, a1, a2, a3, q);
            const double B = cubic_bracket_integral(a0, 2 * a1, 4 * a2, 8 * a3, q);
            CHECK(B == doctest::Approx(A / 2).epsilon(1e-7));
            CHECK(B <= A);
        }
    }
    // Even integrand: the sign of x never enters.
    CHECK(cubic_bracket_integral(1, -2, 0.5, 3, 1.0) > 0.0);
    CHECK_THROWS_AS(cubic_bracket_integral(0, 0, 0, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(cubic_bracket_integral(0, 0, 0, 1, 0.3), InvalidArgument);
}

TEST_CASE("ill-posedness sweep flags") {
    IllposedSweepTemplate t;
    t.s = -2.0;
    const std::vector<double> Ns{16, 32, 64};
    const auto rep = illposed_sweep(t, Ns);
    CHECK(rep.informational);
    CHECK(rep.predicted_exponent == doctest::Approx(-2.2));
    CHECK(rep.fitted_slope < 0.0);
    t.s = -3.5;
    const auto grow = illposed_sweep(t, Ns, 3);
    CHECK_FALSE(grow.informational);
    CHECK(grow.fitted_slope > 0.0);
}

}
