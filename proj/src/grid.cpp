#include "bsq/grid.hpp"

#include <cmath>
#include <string>

#include "bsq/errors.hpp"

namespace bsq {

FrequencyGrid::FrequencyGrid(double xi_min, double xi_max, std::size_t n_nodes)
    : xi_min_(xi_min), xi_max_(xi_max), n_nodes_(n_nodes), spacing_(0.0), offset_(0.0) {
    if (n_nodes < 2) throw InvalidArgument("FrequencyGrid: n_nodes must be >= 2");
    if (!std::isfinite(xi_min) || !std::isfinite(xi_max) || !(xi_max > xi_min))
        throw InvalidArgument("FrequencyGrid: need finite xi_min < xi_max");
    spacing_ = (xi_max - xi_min) / static_cast<double>(n_nodes - 1);
    offset_ = xi_min / spacing_;
}

FrequencyGrid FrequencyGrid::from_spacing(double xi_min, double spacing, std::size_t n_nodes) {
    if (!(spacing > 0.0)) throw InvalidArgument("FrequencyGrid: spacing must be positive");
    if (n_nodes < 2) throw InvalidArgument("FrequencyGrid: n_nodes must be >= 2");
    FrequencyGrid g(xi_min, xi_min + spacing * static_cast<double>(n_nodes - 1), n_nodes);
    g.spacing_ = spacing;  // keep the exact spacing rather than the re-derived quotient
    g.offset_ = xi_min / spacing;
    return g;
}

FrequencyGrid FrequencyGrid::on_lattice(double offset, double spacing, std::size_t n_nodes) {
    FrequencyGrid g = from_spacing(offset * spacing, spacing, n_nodes);
    g.offset_ = offset;
    return g;
}

bool FrequencyGrid::symmetric() const noexcept {
    if (n_nodes_ % 2 == 0) return false;
    const double scale = std::max(std::abs(xi_min_), std::abs(xi_max_));
    return std::abs(xi_min_ + xi_max_) <= 1e-12 * scale;
}

bool FrequencyGrid::same_as(const FrequencyGrid& other, double rel_tol) const noexcept {
    if (n_nodes_ != other.n_nodes_) return false;
    const double tol = rel_tol * spacing_;
    return std::abs(xi_min_ - other.xi_min_) <= tol && std::abs(spacing_ - other.spacing_) <= rel_tol * spacing_;
}

FrequencyGrid make_symmetric_grid(double half_width, std::size_t n_nodes) {
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw InvalidArgument("make_symmetric_grid: half_width must be positive");
    if (n_nodes < 3 || n_nodes % 2 == 0)
        throw InvalidArgument("make_symmetric_grid: n_nodes must be odd and >= 3, got " + std::to_string(n_nodes));
    const auto half = static_cast<double>((n_nodes - 1) / 2);
    return FrequencyGrid::on_lattice(-half, half_width / half, n_nodes);
}

}  // namespace bsq
