#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bsq/dispersion.hpp"

namespace bsq {

using Complex = std::complex<double>;
using ModeVector = std::vector<Complex>;

/// Periodic truncation of the line: modes xi_k = 2 pi k / period. Mode arrays use
/// FFT order: index j holds k = j for j < n/2 and k = j - n otherwise.
class TorusGrid {
public:
    TorusGrid(double period, std::size_t n_modes);

    double period() const noexcept { return period_; }
    std::size_t size() const noexcept { return n_modes_; }
    long mode_index(std::size_t j) const noexcept {
        const auto n = static_cast<long>(n_modes_);
        const auto k = static_cast<long>(j);
        return k < n / 2 ? k : k - n;
    }
    double wavenumber(std::size_t j) const noexcept;
    /// Sample points x_j = j * period / n.
    double position(std::size_t j) const noexcept;

private:
    double period_;
    std::size_t n_modes_;
};

/// Solution snapshot: Fourier-series coefficients of u and u_t at one time.
struct TorusState {
    TorusGrid grid;
    ModeVector u_hat;
    ModeVector v_hat;
    double time = 0.0;
};

/// Mode coefficients of the periodisation of a line function with transform `profile`:
/// c_k = profile(xi_k) / period (Poisson summation).
template <class F>
ModeVector torus_coefficients(const TorusGrid& grid, F&& profile) {
    ModeVector c(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) c[j] = Complex(profile(grid.wavenumber(j))) / grid.period();
    return c;
}

/// Max |c_{-k} - conj(c_k)| relative to max |c_k| (the Nyquist mode must be real).
double hermitian_defect(const TorusGrid& grid, std::span<const Complex> coeffs);

/// Replace c by its Hermitian part, (c_k + conj(c_{-k}))/2.
void enforce_hermitian(const TorusGrid& grid, std::span<Complex> coeffs);

}  // namespace bsq
