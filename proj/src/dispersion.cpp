#include "bsq/dispersion.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "bsq/errors.hpp"

namespace bsq {

DispersionParams::DispersionParams(int beta) : beta_(beta) {
    if (beta != 1 && beta != -1) throw InvalidArgument("DispersionParams: beta must be +1 or -1, got " + std::to_string(beta));
}

double gamma(double xi, DispersionParams params) {
    const double x2 = xi * xi;
    // xi^2 (1 - beta xi^2 + xi^4): the quartic factor is >= 3/4 for both signs.
    const double quartic = 1.0 - params.beta() * x2 + x2 * x2;
    assert(quartic > 0.0);
    return std::abs(xi) * std::sqrt(quartic);
}

double rho(double xi, DispersionParams params) { return xi * xi * xi - 0.5 * params.beta() * xi; }

double multiplier(double xi, DispersionParams params) {
    if (xi == 0.0) return 0.0;
    const double x2 = xi * xi;
    return std::abs(xi) / std::sqrt(1.0 - params.beta() * x2 + x2 * x2);
}

double symbol_equivalence_ratio(double x, double y, DispersionParams params) {
    if (x < 0.0 || y < 0.0) throw InvalidArgument("symbol_equivalence_ratio: x, y must be nonnegative");
    const double ry = std::sqrt(y);
    const double surrogate = y * ry - 0.5 * params.beta() * ry;
    const double exact = std::sqrt(y - params.beta() * y * y + y * y * y);
    return (1.0 + std::abs(x - surrogate)) / (1.0 + std::abs(x - exact));
}

double max_symbol_gap(DispersionParams params) {
    // Gap is unimodal on [0, 2] and decays like 3/(8|xi|) beyond.
    auto neg_gap = [params](double z) { return -(gamma(z, params) - rho(z, params)); };
    const auto [z, v] = boost::math::tools::brent_find_minima(neg_gap, 0.0, 2.0, 52);
    (void)z;
    return -v;
}

}  // namespace bsq
