#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bsq/field.hpp"

namespace bsq {

/// Trapezoid approximation of the integral of `field` over its grid span.
Complex quadrature(const SpectralField& field);

/// Tensor-product trapezoid rule over the (tau, xi) span.
Complex quadrature(const SpaceTimeField& field);

/// Lattice sum h_tau * h_xi * sum(values). Equals the trapezoid rule because a banded
/// field vanishes outside its band.
Complex quadrature(const BandedField& field);

/// Relative mass a truncated convolution may leave outside the retained window.
inline constexpr double kBoundaryMassTolerance = 1e-10;

/// Full linear convolution int f(y) g(xi - y) dy of two fields sharing a spacing.
/// The result lives on the sum lattice (first node xi_f + xi_g, n_f + n_g - 1 nodes).
SpectralField convolve_full(const SpectralField& f, const SpectralField& g);

/// Convolution truncated back to the common input grid. The grid must be lattice
/// aligned (xi_min an integer multiple of the spacing, e.g. symmetric grids);
/// throws SupportOverflow if more than kBoundaryMassTolerance of the mass is cut.
SpectralField convolve(const SpectralField& f, const SpectralField& g);

SpaceTimeField convolve2d_full(const SpaceTimeField& f, const SpaceTimeField& g);
SpaceTimeField convolve2d(const SpaceTimeField& f, const SpaceTimeField& g);

/// Convolution of banded fields (same xi spacing and tau step). Direct summation
/// over the stored bands; the output band is exact (no truncation).
BandedField convolve_banded(const BandedField& f, const BandedField& g);

/// Transform of samples g(x_j), x_j = j * period / n, under g^(xi) = int e^{-i x xi} g dx:
/// values (period/n) * sum_j g_j e^{-i xi_k x_j} at xi_k = 2 pi k / period,
/// k = -(n/2) .. n - 1 - (n/2).
SpectralField dft_forward(std::span<const Complex> samples, double period);

/// Inverse of dft_forward; n_points must equal the field size and the field must
/// sit on the lattice dft_forward produces.
std::vector<Complex> dft_inverse(const SpectralField& field, std::size_t n_points);

}  // namespace bsq
