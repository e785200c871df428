#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bsq/dispersion.hpp"
#include "bsq/torus.hpp"

namespace bsq {

namespace detail {
class FftPlan;
}

/// Multiply each mode by cos(t gamma(xi_k)).
ModeVector apply_Vc(std::span<const Complex> coeffs, double t, const TorusGrid& grid, DispersionParams params);

/// Multiply each mode by sin(t gamma)/gamma; the gamma = 0 mode gets the limit value t.
ModeVector apply_Vs(std::span<const Complex> coeffs, double t, const TorusGrid& grid, DispersionParams params);

/// Free evolution of data u(0) = phi, u_t(0) = psi_x (psi given; i xi psi^ formed here).
TorusState linear_evolve(std::span<const Complex> phi, std::span<const Complex> psi, double t, const TorusGrid& grid,
                         DispersionParams params);

/// Truncated Gaussian profile exp(-xi^2 / (2 width^2)) on |xi| <= cutoff, scaled to
/// H^s norm `target_norm` (zero stays zero).
ModeVector gaussian_band_data(const TorusGrid& grid, double target_norm, double s, double width, double cutoff);

/// Per-mode linear energy |v_k|^2 + gamma_k^2 |u_k|^2.
std::vector<double> mode_energy(const TorusState& state, DispersionParams params);

/// Pseudospectral evaluator of the Fourier-side quadratic term -xi^2 (u^2)^.
///
/// Modes with |k| > dealias_fraction * n/2 are removed from u before squaring and
/// from the result; at fraction 2/3 (capped at (n-1)/3 modes) the retained product is alias free.
class NonlinearTerm {
public:
    NonlinearTerm(TorusGrid grid, double dealias_fraction);
    ~NonlinearTerm();
    NonlinearTerm(NonlinearTerm&&) noexcept;
    NonlinearTerm& operator=(NonlinearTerm&&) noexcept;

    ModeVector operator()(std::span<const Complex> u_hat) const;
    bool retained(std::size_t j) const noexcept;
    const TorusGrid& grid() const noexcept { return grid_; }

private:
    TorusGrid grid_;
    long cutoff_;
    std::unique_ptr<detail::FftPlan> plan_;
};

ModeVector nonlinearity(const TorusState& state, double dealias_fraction);

struct SolverConfig {
    double T = 0.5;
    std::size_t n_time_nodes = 201;  ///< odd, shared by the Duhamel quadrature
    double picard_tol = 1e-13;
    std::size_t max_picard_iters = 50;
    double dealias_fraction = 2.0 / 3.0;
    double sobolev_s = 0.0;  ///< index of the H^s norm used for residuals
    double coupling = 1.0;   ///< coefficient of (u^2)_xx; 0 gives the linear flow

    void validate() const;
    double time_step() const noexcept { return T / static_cast<double>(n_time_nodes - 1); }
};

struct Trajectory {
    std::vector<TorusState> states;
    std::size_t iterations = 0;
    std::vector<double> residuals;  ///< sup-in-time H^s distance between successive iterates
};

/// Fixed-point iteration of the Duhamel integral equation on the time nodes. The
/// t'-integral uses composite Simpson weights (3/8 closure on odd nodes). Throws
/// NoContraction when the residual does not fall below picard_tol.
Trajectory picard_solve(std::span<const Complex> phi, std::span<const Complex> psi, const TorusGrid& grid,
                        DispersionParams params, const SolverConfig& config);

/// One application of the integral-equation right-hand side to a trajectory.
Trajectory duhamel_map(std::span<const Complex> phi, std::span<const Complex> psi, const Trajectory& trajectory,
                       const TorusGrid& grid, DispersionParams params, const SolverConfig& config);

/// Integrating-factor RK4 (Lawson) on (u^, v^) with the exact linear part per substep.
/// Reports on the same time nodes as picard_solve. Throws Instability on blow-up.
Trajectory step_oracle_solve(std::span<const Complex> phi, std::span<const Complex> psi, const TorusGrid& grid,
                             DispersionParams params, const SolverConfig& config, std::size_t substeps = 8);

/// sup over shared time nodes of the H^s distance of u^.
double trajectory_distance(const Trajectory& a, const Trajectory& b, double s);

struct Perturbation {
    ModeVector dphi;
    ModeVector dpsi;
};

struct LipschitzReport {
    std::vector<std::optional<double>> ratios;  ///< nullopt where the data distance is zero
    double max_ratio = 0.0;
};

/// Ratio of solution distance in C([0,T];H^s) to data distance (H^s x H^{s-1}) for
/// each perturbation of (phi, psi).
LipschitzReport lipschitz_probe(std::span<const Complex> phi, std::span<const Complex> psi,
                                std::span<const Perturbation> perturbations, const TorusGrid& grid,
                                DispersionParams params, const SolverConfig& config, double s);

}  // namespace bsq
