#include "bsq/norms.hpp"

#include <cmath>
#include <numbers>

#include "bsq/spectral.hpp"

namespace bsq {

double xsb_weight(double tau, double xi, double s, double b, DispersionParams params, WeightVariant variant) {
    const double characteristic = variant == WeightVariant::gamma ? gamma(xi, params) : rho(std::abs(xi), params);
    return std::pow(bracket(std::abs(tau) - characteristic), b) * std::pow(bracket(xi), s);
}

double hs_norm(const SpectralField& field, double s) {
    const auto& grid = field.grid();
    auto weighted = SpectralField::sample(grid, [&, k = std::size_t{0}](double xi) mutable {
        return Complex(std::pow(bracket(xi), 2.0 * s) * std::norm(field[k++]));
    });
    return std::sqrt(quadrature(weighted).real());
}

double hs_norm(const TorusGrid& grid, std::span<const Complex> coeffs, double s) {
    double sum = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        sum += std::pow(bracket(grid.wavenumber(j)), 2.0 * s) * std::norm(coeffs[j]);
    return std::sqrt(2.0 * std::numbers::pi * grid.period() * sum);
}

double xsb_norm(const SpaceTimeField& field, double s, double b, DispersionParams params, WeightVariant variant) {
    const auto& g = field.grid();
    auto weighted = SpaceTimeField::sample(g, [&](double tau, double xi) {
        const double w = xsb_weight(tau, xi, s, b, params, variant);
        return Complex(w * w);
    });
    // Reuse the trapezoid rule on |w u|^2.
    std::vector<Complex> sq(weighted.values().begin(), weighted.values().end());
    for (std::size_t k = 0; k < sq.size(); ++k) sq[k] *= std::norm(field.values()[k]);
    return std::sqrt(quadrature(SpaceTimeField(g, std::move(sq))).real());
}

double xsb_norm(const BandedField& field, double s, double b, DispersionParams params, WeightVariant variant) {
    double sum = 0.0;
    for (std::size_t j = 0; j < field.n_columns(); ++j) {
        const double xi = field.xi_axis().node(j);
        const auto& col = field.column(j);
        for (std::size_t i = 0; i < col.values.size(); ++i) {
            const double w = xsb_weight(field.tau(col.first + static_cast<long>(i)), xi, s, b, params, variant);
            sum += w * w * std::norm(col.values[i]);
        }
    }
    return std::sqrt(sum * field.tau_step() * field.xi_axis().spacing());
}

SpaceTimeField xsb_apply_weight(const SpaceTimeField& field, double s, double b, DispersionParams params,
                                WeightVariant variant, WeightAction action) {
    const std::size_t nx = field.n_xi();
    return SpaceTimeField::sample(field.grid(), [&, k = std::size_t{0}](double tau, double xi) mutable {
        const double w = xsb_weight(tau, xi, s, b, params, variant);
        const Complex z = field.at(k / nx, k % nx);
        ++k;
        return action == WeightAction::multiply ? z * w : z / w;
    });
}

BandedField xsb_apply_weight(const BandedField& field, double s, double b, DispersionParams params,
                             WeightVariant variant, WeightAction action) {
    std::vector<BandColumn> cols(field.n_columns());
    for (std::size_t j = 0; j < field.n_columns(); ++j) {
        const double xi = field.xi_axis().node(j);
        const auto& src = field.column(j);
        cols[j].first = src.first;
        cols[j].values.resize(src.values.size());
        for (std::size_t i = 0; i < src.values.size(); ++i) {
            const double w = xsb_weight(field.tau(src.first + static_cast<long>(i)), xi, s, b, params, variant);
            cols[j].values[i] = action == WeightAction::multiply ? src.values[i] * w : src.values[i] / w;
        }
    }
    return BandedField(field.xi_axis(), field.tau_step(), std::move(cols));
}

}  // namespace bsq
