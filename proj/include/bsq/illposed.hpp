#pragma once

#include <cstddef>
#include <span>

#include "bsq/dispersion.hpp"
#include "bsq/field.hpp"
#include "bsq/report.hpp"

namespace bsq {

/// Time-integrated interaction kernel of the second Picard iterate,
///   K = int_0^t sin((t - t') gamma) cos(t' gamma_1) cos(t' gamma_2) dt',
/// gamma = gamma(xi), gamma_i = gamma(xi_i). Evaluated in closed form as a product of
/// sincs, which stays accurate when the frequencies nearly resonate.
double kernel_K(double t, double xi, double xi1, double xi2, DispersionParams params);

/// kernel_K with xi2 = xi - xi1.
double kernel_K(double t, double xi, double xi1, DispersionParams params);

struct IllposedSpec {
    double N = 16.0;
    double s = -3.5;
    double epsilon = 0.1;
    DispersionParams params{1};
    double xi_resolution = 1.0 / 64.0;  ///< rounded down to 1/m
    std::size_t t_quadrature_nodes = 8;  ///< size of the time grid in (0, 2 t_N] used by sup_over_t
    bool sup_over_t = false;             ///< false: evaluate at the witness time only

    double witness_time() const;  ///< N^{-3-epsilon}
    void validate() const;        ///< throws InvalidSpec
};

/// phi^ = N^-s 1_[-N, -N+1], psi^ = N^-s 1_[N+1, N+2] on a symmetric lattice of step 1/m.
/// Nodes landing exactly on an interval end carry the value 1/2.
struct IllposedData {
    SpectralField phi_hat;
    SpectralField psi_hat;
};

IllposedData build_illposed_data(const IllposedSpec& spec);

/// Fourier transform of the second iterate restricted to xi in [1, 3]:
///   Q^(xi) = -xi^2/(8 i gamma(xi)) int phi^(xi - xi1) psi^(xi1) K(t, xi, xi1) dxi1.
SpectralField illposed_transform(const IllposedSpec& spec, double t);
/// Same with caller-supplied data on the grid build_illposed_data(spec) would use.
SpectralField illposed_transform(const IllposedData& data, const IllposedSpec& spec, double t);

/// ||Q(t)||_{H^s} over xi in [1, 3] at the witness time (or sup over the time grid).
double illposed_quantity(const IllposedSpec& spec);
double illposed_quantity(const IllposedData& data, const IllposedSpec& spec);

/// Measure of {xi1 : xi - xi1 in [-N, -N+1], xi1 in [N+1, N+2]} on the data lattice.
double illposed_overlap_measure(const IllposedSpec& spec, double xi);

/// -2s - 6 - 2 epsilon.
double illposed_predicted_exponent(double s, double epsilon);

struct IllposedSweepTemplate {
    double s = -3.5;
    double epsilon = 0.1;
    DispersionParams params{1};
    double xi_resolution = 1.0 / 64.0;
    std::size_t t_quadrature_nodes = 8;
    bool sup_over_t = false;

    IllposedSpec at(double N) const;
};

/// pass: |slope - predicted| <= 0.1. Informational when s >= -3 or the predicted
/// exponent is not positive (no growth claimed).
ExperimentReport illposed_sweep(const IllposedSweepTemplate& tmpl, std::span<const double> Ns,
                                std::size_t workers = 1);

inline constexpr double kIllposedSlopeTolerance = 0.1;

}  // namespace bsq
