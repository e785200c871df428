#include "bsq/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bsq/dispersion.hpp"
#include "bsq/errors.hpp"

namespace bsq {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

template <class F>
double gk(F&& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return GK::integrate(f, lo, hi, 12, 1e-11);
}

/// Integral over [x0, x0 + length] (length > 0) on panels that grow geometrically away from x0.
template <class F>
double geometric(F&& f, double x0, double length, int direction) {
    double acc = 0.0, d0 = 0.0, d1 = std::min(1.0, length);
    while (d0 < length) {
        const double a = x0 + direction * d0, b = x0 + direction * d1;
        acc += gk(f, std::min(a, b), std::max(a, b));
        d0 = d1;
        d1 = std::min(2.0 * d1, length);
    }
    return acc;
}

/// Integral over [lo, hi] with panels refined toward both ends.
template <class F>
double two_sided(F&& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    const double mid = 0.5 * (lo + hi);
    return geometric(f, lo, mid - lo, +1) + geometric(f, hi, hi - mid, -1);
}

}  // namespace

ConvolutionCheck check_weighted_convolution(double lambda, double mu, double p, double q) {
    if (!(p > 0.0) || !(q > 0.0) || !(p + q > 1.0)) throw InvalidArgument("check_weighted_convolution: need p, q > 0 and p + q > 1");
    if (!std::isfinite(lambda) || !std::isfinite(mu)) throw InvalidArgument("check_weighted_convolution: lambda, mu must be finite");
    auto f = [&](double x) { return std::pow(bracket(x - lambda), -p) * std::pow(bracket(x - mu), -q); };
    const double lo = std::min(lambda, mu), hi = std::max(lambda, mu);
    const double D = hi - lo;
    const double W = 100.0 * (1.0 + D);

    double total = two_sided(f, lo, hi) + geometric(f, lo, W, -1) + geometric(f, hi, W, +1);

    // Tails beyond the window: x = x0 + Y u^-kappa maps [X, inf) onto (0, 1] and makes
    // the integrand tend to the constant kappa Y^(1 - p - q).
    const double sigma = p + q - 1.0;
    const double kappa = 1.0 / sigma;
    auto tail = [&](double X, double x0, double A, double B) {
        const double Y = X - x0;
        auto g = [&](double u) {
            const double e = std::exp(-(std::log(Y) - kappa * std::log(u)));  // 1 / (Y u^-kappa)
            return kappa * std::pow(Y, -sigma) * std::exp(-p * std::log1p(A * e) - q * std::log1p(B * e));
        };
        return gk(g, 0.0, 1.0);
    };
    // right: x - lambda + 1 = (x - x0) + (x0 + 1 - lambda)
    const double xr = hi + W, x0r = hi;
    total += tail(xr, x0r, x0r + 1.0 - lambda, x0r + 1.0 - mu);
    // left, mirrored: x -> -x
    const double xl = -(lo - W), x0l = -lo;
    total += tail(xl, x0l, x0l + 1.0 + lambda, x0l + 1.0 + mu);

    ConvolutionCheck out;
    out.integral = total;
    out.exponent = std::min({p, q, p + q - 1.0});
    out.product = total * std::pow(bracket(lambda - mu), out.exponent);
    return out;
}

double weighted_convolution_battery(std::uint64_t seed, std::size_t sample_count) {
    std::mt19937_64 rng(seed);
    constexpr std::array<std::array<double, 2>, 13> pairs{{{1.5, 1.5}, {1.5, 2}, {1.5, 3}, {2, 1.5}, {2, 2},
                                                           {2, 3}, {3, 1.5}, {3, 2}, {3, 3}, {1, 1.5},
                                                           {1, 2}, {1, 3}, {3, 1}}};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    double worst = 0.0;
    for (std::size_t k = 0; k < sample_count; ++k) {
        const double lambda = 200.0 * unit(rng) - 100.0;
        const double D = std::pow(10.0, 4.0 * unit(rng)) - 1.0;
        const double mu = lambda + (unit(rng) < 0.5 ? D : -D);
        const auto& pq = pairs[pick(rng)];
        worst = std::max(worst, check_weighted_convolution(lambda, mu, pq[0], pq[1]).product);
    }
    return worst;
}

double cubic_bracket_integral(double a0, double a1, double a2, double a3, double q) {
    if (a3 == 0.0 || !std::isfinite(a3)) throw InvalidArgument("cubic_bracket_integral: a3 must be nonzero");
    if (!(q > 1.0 / 3.0)) throw InvalidArgument("cubic_bracket_integral: q must exceed 1/3");
    if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(a2))
        throw InvalidArgument("cubic_bracket_integral: coefficients must be finite");

    const double c0 = a0 / a3, c1 = a1 / a3, c2 = a2 / a3;
    const double X = 2.0 * (1.0 + std::max({std::abs(c0), std::abs(c1), std::abs(c2)}));
    // Even integrand: integrate over x >= 0 and double.
    auto P = [&](double x) { return ((a3 * x + a2) * x + a1) * x + a0; };
    auto f = [&](double x) { return std::pow(1.0 + std::abs(P(x)), -q); };

    // Breakpoints at the real roots in [0, X]: the integrand has a kink there and is
    // sharply peaked when |P'| is large.
    std::vector<double> cuts{0.0, X};
    constexpr int scan = 4096;
    double xa = 0.0, pa = P(xa);
    for (int i = 1; i <= scan; ++i) {
        const double xb = X * i / scan, pb = P(xb);
        if (pa == 0.0) cuts.push_back(xa);
        if ((pa < 0) != (pb < 0) && pb != 0.0 && pa != 0.0) {
            double l = xa, r = xb, pl = pa;
            for (int it = 0; it < 200 && r - l > 1e-15 * (1.0 + std::abs(l)); ++it) {
                const double mid = 0.5 * (l + r), pm = P(mid);
                if ((pm < 0) == (pl < 0)) {
                    l = mid;
                    pl = pm;
                } else {
                    r = mid;
                }
            }
            cuts.push_back(0.5 * (l + r));
        }
        xa = xb;
        pa = pb;
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += two_sided(f, cuts[i], cuts[i + 1]);

    // Tail x >= X with x = X u^-kappa, kappa = 1/(3q - 1). With e = 1/x,
    // 1 + |P(x)| = |a3| x^3 R, R = |1 + c2 e + c1 e^2 + c0 e^3| + e^3/|a3|.
    const double kappa = 1.0 / (3.0 * q - 1.0);
    const double scale = kappa * std::pow(X, 1.0 - 3.0 * q) * std::pow(std::abs(a3), -q);
    auto g = [&](double u) {
        const double e = std::pow(u, kappa) / X;
        const double R = std::abs(1.0 + e * (c2 + e * (c1 + e * c0))) + e * e * e / std::abs(a3);
        return scale * std::pow(R, -q);
    };
    total += gk(g, 0.0, 1.0);
    return 2.0 * total;
}

}  // namespace bsq
