#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

using Complex = std::complex<double>;

/// Complex samples of a Fourier-side function on a FrequencyGrid.
class SpectralField {
public:
    SpectralField(FrequencyGrid grid, std::vector<Complex> values);
    /// Zero field.
    explicit SpectralField(FrequencyGrid grid);

    template <class F>
    static SpectralField sample(const FrequencyGrid& grid, F&& fn) {
        std::vector<Complex> v(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) v[k] = fn(grid.node(k));
        return SpectralField(grid, std::move(v));
    }

    const FrequencyGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> values() const noexcept { return values_; }
    const Complex& operator[](std::size_t k) const noexcept { return values_[k]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Checks value(-xi) = conj(value(xi)) at mirrored nodes (grid must be symmetric).
    bool hermitian(double rel_tol = 1e-12) const;

private:
    FrequencyGrid grid_;
    std::vector<Complex> values_;
};

/// Complex samples on a (tau, xi) product grid, stored row-major with tau as the row index.
class SpaceTimeField {
public:
    SpaceTimeField(SpaceTimeGrid grid, std::vector<Complex> values);
    explicit SpaceTimeField(SpaceTimeGrid grid);

    template <class F>
    static SpaceTimeField sample(const SpaceTimeGrid& grid, F&& fn) {
        const std::size_t nt = grid.tau_axis.size();
        const std::size_t nx = grid.xi_axis.size();
        std::vector<Complex> v(nt * nx);
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < nx; ++j) v[i * nx + j] = fn(grid.tau_axis.node(i), grid.xi_axis.node(j));
        return SpaceTimeField(grid, std::move(v));
    }

    const SpaceTimeGrid& grid() const noexcept { return grid_; }
    std::size_t n_tau() const noexcept { return grid_.tau_axis.size(); }
    std::size_t n_xi() const noexcept { return grid_.xi_axis.size(); }
    const Complex& at(std::size_t i_tau, std::size_t j_xi) const noexcept { return values_[i_tau * n_xi() + j_xi]; }
    std::span<const Complex> values() const noexcept { return values_; }

private:
    SpaceTimeGrid grid_;
    std::vector<Complex> values_;
};

/// One xi-column of a banded field: a contiguous run of tau-lattice samples.
struct BandColumn {
    long first = 0;             ///< tau index of values[0]; tau = (first + i) * tau_step
    std::vector<Complex> values;
};

/// Space-time field that is zero outside one contiguous tau-band per xi node.
///
/// The counterexample data live on thin curved strips (|tau - rho(xi)| <= 1 at xi ~ N),
/// so a dense rectangle covering them grows like N^3 while the band stays O(1) per
/// column. The tau lattice is the integer multiples of tau_step for every column,
/// which makes reflection and convolution lattice-exact.
class BandedField {
public:
    BandedField(FrequencyGrid xi_axis, double tau_step, std::vector<BandColumn> columns);

    const FrequencyGrid& xi_axis() const noexcept { return xi_axis_; }
    double tau_step() const noexcept { return tau_step_; }
    std::size_t n_columns() const noexcept { return columns_.size(); }
    const BandColumn& column(std::size_t j) const noexcept { return columns_[j]; }
    double tau(long index) const noexcept { return static_cast<double>(index) * tau_step_; }

    /// Number of stored samples.
    std::size_t band_size() const noexcept;

    /// Field evaluated at (-tau, -xi) on the mirrored lattice.
    BandedField reflected() const;

    /// Dense copy on a grid that must contain the band and share its lattice.
    SpaceTimeField to_dense(const SpaceTimeGrid& grid) const;

    /// Smallest lattice-aligned dense grid holding every stored sample.
    SpaceTimeGrid bounding_grid() const;

private:
    FrequencyGrid xi_axis_;
    double tau_step_;
    std::vector<BandColumn> columns_;
};

}  // namespace bsq
