#include "bsq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bsq/dispersion.hpp"
#include "bsq/integrals.hpp"
#include "bsq/norms.hpp"

namespace bsq {

namespace {

CheckResult upper(std::string name, double measured, double bound, std::string detail = {}) {
    return {std::move(name), measured <= bound, measured, bound, std::move(detail)};
}

CheckResult lower(std::string name, double measured, double bound, std::string detail = {}) {
    return {std::move(name), measured >= bound, measured, bound, std::move(detail)};
}

const char* tag(int beta) { return beta > 0 ? "beta=+1" : "beta=-1"; }

}  // namespace

std::vector<CheckResult> run_checks(const ChecksOptions& options) {
    const double scale = options.tolerance_scale;
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> wide(-100.0, 100.0);
    std::vector<CheckResult> out;

    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        double worst = 0.0;
        for (int k = 0; k < 1000000; ++k) worst = std::max(worst, multiplier(wide(rng), P));
        out.push_back(upper(std::string("multiplier_bound ") + tag(beta), worst, 1.0 + 1e-12 * scale));
    }
    const DispersionParams bad(1), good(-1);
    out.push_back(upper("multiplier_peak beta=+1", std::abs(multiplier(1.0, bad) - 1.0), 1e-8 * scale));
    out.push_back(upper("multiplier_zero", std::abs(multiplier(0.0, bad)) + std::abs(multiplier(0.0, good)),
                        1e-300 * scale));

    // Fixed 1000 x 1000 lattice on [0, 1e4]^2 against the constant 3/2.
    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 1000; ++i)
            for (int j = 0; j < 1000; ++j) {
                const double r = symbol_equivalence_ratio(10.0 * i, 10.0 * j, P);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        out.push_back(lower(std::string("symbol_ratio_grid_lower ") + tag(beta), lo, 2.0 / 3.0 - 1e-9 * scale));
        out.push_back(upper(std::string("symbol_ratio_grid_upper ") + tag(beta), hi, 1.5 + 1e-9 * scale));
    }

    // Small y, where the gap between the two characteristics peaks.
    std::uniform_real_distribution<double> small(0.0, 4.0);
    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        const double c = symbol_equivalence_constant(P);
        double lo = 1e300, hi = 0.0;
        for (int k = 0; k < 200000; ++k) {
            const double y = small(rng);
            const double x = std::pow(y, 1.5) + small(rng) - 2.0;
            const double r = symbol_equivalence_ratio(std::max(0.0, x), y, P);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        std::ostringstream d;
        d.precision(6);
        d << "c=" << c;
        out.push_back(lower(std::string("symbol_ratio_sharp_lower ") + tag(beta), lo, 1.0 / c - 1e-9 * scale, d.str()));
        out.push_back(upper(std::string("symbol_ratio_sharp_upper ") + tag(beta), hi, c + 1e-9 * scale, d.str()));
    }

    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        double worst = -1e300;
        for (int k = 0; k <= 100000; ++k) {
            const double xi = k == 0 ? 0.0 : std::pow(10.0, -4.0 + 8.0 * k / 100000.0);
            // Relative to gamma: at |xi| ~ 1e4 both are ~1e12 and the true gap is 3/(8 xi).
            worst = std::max(worst, (rho(xi, P) - gamma(xi, P)) / std::max(1.0, gamma(xi, P)));
        }
        out.push_back(upper(std::string("rho_below_gamma ") + tag(beta), worst, 1e-12 * scale));
    }
    {
        double worst = -1e300;
        for (int k = 0; k <= 100000; ++k) {
            const double xi = k == 0 ? 0.0 : std::pow(10.0, -4.0 + 8.0 * k / 100000.0);
            worst = std::max(worst, gamma(xi, good) - rho(xi, good));
        }
        out.push_back(upper("gamma_below_rho_plus_half beta=-1", worst, 0.5 + 1e-9 * scale));
        // For beta = +1 the half-unit bound holds outside |xi|^2 in (0.1524, 1).
        double outside = -1e300;
        for (int k = 0; k <= 100000; ++k) {
            const double xi = k == 0 ? 0.0 : std::pow(10.0, -4.0 + 8.0 * k / 100000.0);
            const double y = xi * xi;
            if (y > 0.1524 && y < 1.0) continue;
            outside = std::max(outside, gamma(xi, bad) - rho(xi, bad));
        }
        out.push_back(upper("gamma_below_rho_plus_half_outside_window beta=+1", outside, 0.5 + 1e-9 * scale));
        out.push_back(upper("max_symbol_gap beta=+1", std::abs(max_symbol_gap(bad) - 0.61566), 1e-4 * scale));
    }

    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        double worst = 0.0;
        for (int k = 0; k <= 1000; ++k) {
            const double xi = 1e3 * std::pow(10.0, 3.0 * k / 1000.0);
            worst = std::max(worst, std::abs(gamma(xi, P) / (xi * xi * xi) - 1.0));
        }
        out.push_back(upper(std::string("gamma_cubic_growth ") + tag(beta), worst, 1e-5 * scale));
    }

    for (int beta : {1, -1}) {
        const DispersionParams P(beta);
        double worst = 0.0;
        for (int k = 0; k < 100000; ++k) {
            const double xi = wide(rng);
            worst = std::max({worst, std::abs(gamma(xi, P) - gamma(-xi, P)),
                              std::abs(multiplier(xi, P) - multiplier(-xi, P)), std::abs(rho(xi, P) + rho(-xi, P))});
        }
        out.push_back(upper(std::string("symbol_parity ") + tag(beta), worst, 1e-300 * scale));
    }

    {
        std::uniform_real_distribution<double> tau(-2e4, 2e4), xi(-30.0, 30.0), idx(-2.0, 2.0);
        double worst_ratio = 0.0, min_weight = 1e300;
        for (int beta : {1, -1}) {
            const DispersionParams P(beta);
            const double c = symbol_equivalence_constant(P);
            for (int k = 0; k < 100000; ++k) {
                const double t = tau(rng), x = xi(rng), s = idx(rng), b = idx(rng);
                const double wg = xsb_weight(t, x, s, b, P, WeightVariant::gamma);
                const double wr = xsb_weight(t, x, s, b, P, WeightVariant::rho);
                min_weight = std::min({min_weight, wg, wr});
                // wg / wr lies in [c^-|b|, c^|b|]; record log overshoot relative to |b| log c.
                const double excess = std::abs(std::log(wg / wr)) - std::abs(b) * std::log(c);
                worst_ratio = std::max(worst_ratio, excess);
            }
        }
        out.push_back(upper("weight_variant_equivalence", worst_ratio, 1e-12 * scale));
        out.push_back(lower("weight_positive", min_weight, 0.0));
    }

    out.push_back(upper("weighted_convolution_bound", weighted_convolution_battery(options.seed, 200), 10.0 * scale));

    {
        bool finite = true;
        double identity = 0.0, growth = 0.0;
        std::uniform_real_distribution<double> coef(-5.0, 5.0), lead(1.0, 5.0), pos(0.0, 5.0);
        for (double q : {0.34, 0.5, 1.0}) {
            for (int k = 0; k < 6; ++k) {
                const double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng);
                const double a3 = (k % 2 ? 1.0 : -1.0) * lead(rng);
                const double I = cubic_bracket_integral(a0, a1, a2, a3, q);
                finite = finite && std::isfinite(I) && I > 0.0;
                // x -> x/2 rescaling: I(a0, 2a1, 4a2, 8a3) = I(a0, a1, a2, a3) / 2.
                const double J = cubic_bracket_integral(a0, 2 * a1, 4 * a2, 8 * a3, q);
                identity = std::max(identity, std::abs(2.0 * J / I - 1.0));
                // With nonnegative coefficients the integrand falls pointwise as a3 grows.
                const double b0 = pos(rng), b1 = pos(rng), b2 = pos(rng), b3 = lead(rng);
                const double base = cubic_bracket_integral(b0, b1, b2, b3, q);
                growth = std::max(growth, cubic_bracket_integral(b0, b1, b2, 8 * b3, q) / base - 1.0);
            }
        }
        out.push_back(lower("cubic_integral_finite", finite ? 1.0 : 0.0, 1.0));
        out.push_back(upper("cubic_integral_scaling", identity, 1e-7 * scale));
        out.push_back(upper("cubic_integral_monotone", growth, 1e-9 * scale));
    }
    return out;
}

}  // namespace bsq
