#pragma once

#include <cstddef>
#include <span>

#include "bsq/dispersion.hpp"
#include "bsq/field.hpp"
#include "bsq/report.hpp"

namespace bsq {

/// alpha = (1 - 2a)/(1 - a), the strip-width exponent paired with modulation index a.
double strip_exponent_for(double a);

/// -(2 + alpha)s - (2 - alpha)a - 3 alpha/2: growth exponent of the norm ratio
/// claimed by the counterexample's exponent chain.
double bilinear_predicted_exponent(double s, double a, double alpha);

/// s below which the claimed exponent is positive: -(3 alpha/2 + (2 - alpha)a)/(alpha + 2).
double bilinear_threshold(double a, double alpha);

/// One counterexample configuration. A_N = {N <= xi <= N + N^-alpha, |tau - rho(xi)| <= 1}.
struct BilinearSpec {
    double N = 16.0;
    double alpha = 1.0 / 3.0;
    double s = -0.8;
    double b = 0.55;
    double a = 0.4;
    DispersionParams params{1};
    double tau_resolution = 1.0 / 32.0;  ///< tau lattice step, <= 1/8
    double xi_resolution = 0.0;          ///< upper bound on the xi step, <= N^-alpha / 8

    double strip_width() const;
    void validate() const;  ///< throws InvalidSpec
};

struct CounterexamplePair {
    BandedField f;  ///< indicator of A_N
    BandedField g;  ///< indicator of -A_N, g(tau, xi) = f(-tau, -xi)
};

/// Indicator fields of A_N and -A_N. xi nodes are the cell centres of [N, N + N^-alpha]
/// (exact xi-measure); tau nodes are the lattice points with |tau - rho(xi)| <= 1.
CounterexamplePair build_counterexample_pair(const BilinearSpec& spec);

/// || (1/2) (xi^2/gamma) (u^ * v^) ||_{X^{s,-a}} with the rho-variant weight.
double bilinear_lhs(const BandedField& u_hat, const BandedField& v_hat, double s, double a, DispersionParams params);

/// Dense-grid form; u, v share a lattice-aligned grid that contains the convolution.
double bilinear_lhs(const SpaceTimeField& u_hat, const SpaceTimeField& v_hat, double s, double a,
                    DispersionParams params);

/// bilinear_lhs(u_N, v_N) / (||u_N||_{X^{s,b}} ||v_N||_{X^{s,b}}) where f_N, g_N are the
/// weighted versions of u_N, v_N.
double bilinear_ratio(const BilinearSpec& spec);

/// Per-N spec generator for sweeps.
struct BilinearSweepTemplate {
    double s = -0.8;
    double b = 0.55;
    double a = 0.4;
    double alpha = 0.0;  ///< 0 selects strip_exponent_for(a)
    DispersionParams params{1};
    double tau_resolution = 1.0 / 32.0;
    std::size_t xi_cells = 32;  ///< xi nodes across the strip width

    double resolved_alpha() const;
    BilinearSpec at(double N) const;
};

/// Slope of log(ratio) vs log(N). pass: slope >= predicted - 0.15. Informational when
/// s >= -1/2 (no failure claimed there).
ExperimentReport bilinear_ratio_sweep(const BilinearSweepTemplate& tmpl, std::span<const double> Ns,
                                      std::size_t workers = 1);

inline constexpr double kBilinearSlopeSlack = 0.15;

}  // namespace bsq
