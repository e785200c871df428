#include "bsq/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

void require_finite(std::span<const Complex> v, const char* who) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidArgument(std::string(who) + ": non-finite value");
}

}  // namespace

SpectralField::SpectralField(FrequencyGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw InvalidArgument("SpectralField: values length must equal grid size");
    require_finite(values_, "SpectralField");
}

SpectralField::SpectralField(FrequencyGrid grid) : grid_(grid), values_(grid.size()) {}

bool SpectralField::hermitian(double rel_tol) const {
    if (!grid_.symmetric()) return false;
    double scale = 0.0;
    for (const auto& z : values_) scale = std::max(scale, std::abs(z));
    const std::size_t n = values_.size();
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(values_[n - 1 - k] - std::conj(values_[k])) > rel_tol * scale) return false;
    return true;
}

SpaceTimeField::SpaceTimeField(SpaceTimeGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.tau_axis.size() * grid_.xi_axis.size())
        throw InvalidArgument("SpaceTimeField: values size must equal n_tau * n_xi");
    require_finite(values_, "SpaceTimeField");
}

SpaceTimeField::SpaceTimeField(SpaceTimeGrid grid)
    : grid_(grid), values_(grid.tau_axis.size() * grid.xi_axis.size()) {}

BandedField::BandedField(FrequencyGrid xi_axis, double tau_step, std::vector<BandColumn> columns)
    : xi_axis_(xi_axis), tau_step_(tau_step), columns_(std::move(columns)) {
    if (!(tau_step_ > 0.0)) throw InvalidArgument("BandedField: tau_step must be positive");
    if (columns_.size() != xi_axis_.size()) throw InvalidArgument("BandedField: one column per xi node required");
    for (const auto& c : columns_) require_finite(c.values, "BandedField");
}

std::size_t BandedField::band_size() const noexcept {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.values.size();
    return n;
}

BandedField BandedField::reflected() const {
    const std::size_t n = columns_.size();
    // xi node k of the mirror lattice is -(node n-1-k).
    const double offset = -(xi_axis_.lattice_offset() + static_cast<double>(n - 1));
    FrequencyGrid axis = FrequencyGrid::on_lattice(offset, xi_axis_.spacing(), n);
    std::vector<BandColumn> cols(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& src = columns_[n - 1 - k];
        cols[k].first = src.values.empty() ? 0 : -(src.first + static_cast<long>(src.values.size()) - 1);
        cols[k].values.assign(src.values.rbegin(), src.values.rend());
    }
    return BandedField(axis, tau_step_, std::move(cols));
}

SpaceTimeGrid BandedField::bounding_grid() const {
    long lo = std::numeric_limits<long>::max();
    long hi = std::numeric_limits<long>::min();
    for (const auto& c : columns_) {
        if (c.values.empty()) continue;
        lo = std::min(lo, c.first);
        hi = std::max(hi, c.first + static_cast<long>(c.values.size()) - 1);
    }
    if (lo > hi) lo = hi = 0;
    if (hi == lo) ++hi;
    auto tau_axis = FrequencyGrid::on_lattice(static_cast<double>(lo), tau_step_, static_cast<std::size_t>(hi - lo + 1));
    return SpaceTimeGrid{tau_axis, xi_axis_};
}

SpaceTimeField BandedField::to_dense(const SpaceTimeGrid& grid) const {
    if (!grid.xi_axis.same_as(xi_axis_, 1e-9)) throw InvalidArgument("BandedField::to_dense: xi axis mismatch");
    const double off = grid.tau_axis.lattice_offset();
    const long base = std::lround(off);
    if (std::abs(off - static_cast<double>(base)) > 1e-9 ||
        std::abs(grid.tau_axis.spacing() - tau_step_) > 1e-12 * tau_step_)
        throw InvalidArgument("BandedField::to_dense: tau axis is not on the band lattice");
    const std::size_t nt = grid.tau_axis.size();
    const std::size_t nx = grid.xi_axis.size();
    std::vector<Complex> v(nt * nx);
    for (std::size_t j = 0; j < nx; ++j) {
        const auto& c = columns_[j];
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            const long row = c.first + static_cast<long>(i) - base;
            if (row < 0 || row >= static_cast<long>(nt)) {
                if (c.values[i] != Complex{}) throw InvalidArgument("BandedField::to_dense: grid does not cover band");
                continue;
            }
            v[static_cast<std::size_t>(row) * nx + j] = c.values[i];
        }
    }
    return SpaceTimeField(grid, std::move(v));
}

}  // namespace bsq
