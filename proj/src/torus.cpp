#include "bsq/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bsq/errors.hpp"

namespace bsq {

TorusGrid::TorusGrid(double period, std::size_t n_modes) : period_(period), n_modes_(n_modes) {
    if (!(period > 0.0) || !std::isfinite(period)) throw InvalidArgument("TorusGrid: period must be positive");
    if (n_modes < 8 || n_modes % 2 != 0) throw InvalidArgument("TorusGrid: n_modes must be even and >= 8");
}

double TorusGrid::wavenumber(std::size_t j) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(mode_index(j)) / period_;
}

double TorusGrid::position(std::size_t j) const noexcept {
    return period_ * static_cast<double>(j) / static_cast<double>(n_modes_);
}

namespace {
std::size_t mirror(std::size_t j, std::size_t n) { return j == 0 ? 0 : n - j; }
}  // namespace

double hermitian_defect(const TorusGrid& grid, std::span<const Complex> c) {
    const std::size_t n = grid.size();
    double scale = 0.0, defect = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        scale = std::max(scale, std::abs(c[j]));
        defect = std::max(defect, std::abs(c[mirror(j, n)] - std::conj(c[j])));
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

void enforce_hermitian(const TorusGrid& grid, std::span<Complex> c) {
    const std::size_t n = grid.size();
    for (std::size_t j = 0; j <= n / 2; ++j) {
        const std::size_t m = mirror(j, n);
        const Complex avg = 0.5 * (c[j] + std::conj(c[m]));
        c[j] = avg;
        c[m] = std::conj(avg);
    }
}

}  // namespace bsq
