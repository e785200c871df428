#include "bsq/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsq/errors.hpp"
#include "bsq/norms.hpp"
#include "fft.hpp"

namespace bsq {

namespace {

constexpr Complex I{0.0, 1.0};

// sin(t g)/g with the g -> 0 limit t.
double sine_factor(double t, double g) { return g == 0.0 ? t : std::sin(t * g) / g; }

ModeVector velocity_data(std::span<const Complex> psi, const TorusGrid& grid) {
    ModeVector out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] = I * grid.wavenumber(j) * psi[j];
    return out;
}

void require_size(std::span<const Complex> v, const TorusGrid& grid, const char* who) {
    if (v.size() != grid.size()) throw InvalidArgument(std::string(who) + ": coefficient array must have n_modes entries");
}

std::vector<double> gammas(const TorusGrid& grid, DispersionParams params) {
    std::vector<double> g(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) g[j] = gamma(grid.wavenumber(j), params);
    return g;
}

// Quadrature weights for int_0^{t_n} f dt' on the uniform nodes; row n may reach node 2
// when n = 1 (three-point rule exact for quadratics).
std::vector<std::vector<double>> duhamel_weights(std::size_t n_nodes, double h) {
    std::vector<std::vector<double>> w(n_nodes);
    for (std::size_t n = 1; n < n_nodes; ++n) {
        auto& row = w[n];
        if (n == 1) {
            row = {5.0 * h / 12.0, 8.0 * h / 12.0, -h / 12.0};
            continue;
        }
        row.assign(n + 1, 0.0);
        const std::size_t simpson_end = (n % 2 == 0) ? n : n - 3;
        for (std::size_t j = 0; j + 2 <= simpson_end; j += 2) {
            row[j] += h / 3.0;
            row[j + 1] += 4.0 * h / 3.0;
            row[j + 2] += h / 3.0;
        }
        if (n % 2 == 1) {
            const double c = 3.0 * h / 8.0;
            row[n - 3] += c;
            row[n - 2] += 3.0 * c;
            row[n - 1] += 3.0 * c;
            row[n] += c;
        }
    }
    return w;
}

struct FreeFlow {
    std::vector<ModeVector> u;
    std::vector<ModeVector> v;
};

FreeFlow free_flow(std::span<const Complex> phi, std::span<const Complex> psi, const TorusGrid& grid,
                   DispersionParams params, const SolverConfig& config) {
    FreeFlow f;
    const double h = config.time_step();
    for (std::size_t n = 0; n < config.n_time_nodes; ++n) {
        auto s = linear_evolve(phi, psi, static_cast<double>(n) * h, grid, params);
        f.u.push_back(std::move(s.u_hat));
        f.v.push_back(std::move(s.v_hat));
    }
    return f;
}

// Evaluates the Duhamel right-hand side for a trajectory of u^ values.
class DuhamelOperator {
public:
    DuhamelOperator(const TorusGrid& grid, DispersionParams params, const SolverConfig& config)
        : grid_(grid), config_(config), nonlinear_(grid, config.dealias_fraction),
          weights_(duhamel_weights(config.n_time_nodes, config.time_step())) {
        const std::size_t nt = config.n_time_nodes;
        const std::size_t nm = grid.size();
        const auto g = gammas(grid, params);
        const double h = config.time_step();
        // Lag m in [-1, nt - 1] stored at m + 1.
        sine_.assign(nt + 1, std::vector<double>(nm));
        cosine_.assign(nt + 1, std::vector<double>(nm));
        for (std::size_t m = 0; m <= nt; ++m) {
            const double lag = (static_cast<double>(m) - 1.0) * h;
            for (std::size_t j = 0; j < nm; ++j) {
                sine_[m][j] = sine_factor(lag, g[j]);
                cosine_[m][j] = std::cos(lag * g[j]);
            }
        }
    }

    void apply(const FreeFlow& free, const std::vector<ModeVector>& u, std::vector<ModeVector>& u_out,
               std::vector<ModeVector>& v_out) const {
        const std::size_t nt = config_.n_time_nodes;
        const std::size_t nm = grid_.size();
        std::vector<ModeVector> forcing(nt);
        for (std::size_t n = 0; n < nt; ++n) {
            forcing[n] = nonlinear_(u[n]);
            for (auto& z : forcing[n]) z *= config_.coupling;
        }
        u_out.assign(free.u.begin(), free.u.end());
        v_out.assign(free.v.begin(), free.v.end());
        for (std::size_t n = 1; n < nt; ++n) {
            auto& un = u_out[n];
            auto& vn = v_out[n];
            const auto& row = weights_[n];
            for (std::size_t j = 0; j < row.size(); ++j) {
                const std::size_t lag = n + 1 - j;  // (n - j) + 1 offset
                const auto& sn = sine_[lag];
                const auto& cs = cosine_[lag];
                const auto& fj = forcing[j];
                const double w = row[j];
                for (std::size_t k = 0; k < nm; ++k) {
                    un[k] += w * sn[k] * fj[k];
                    vn[k] += w * cs[k] * fj[k];
                }
            }
            enforce_hermitian(grid_, un);
            enforce_hermitian(grid_, vn);
        }
    }

private:
    TorusGrid grid_;
    SolverConfig config_;
    NonlinearTerm nonlinear_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<double>> sine_;
    std::vector<std::vector<double>> cosine_;
};

Trajectory pack(const TorusGrid& grid, const SolverConfig& config, std::vector<ModeVector>& u,
                std::vector<ModeVector>& v) {
    Trajectory t;
    const double h = config.time_step();
    for (std::size_t n = 0; n < u.size(); ++n)
        t.states.push_back(TorusState{grid, std::move(u[n]), std::move(v[n]), static_cast<double>(n) * h});
    return t;
}

double sup_distance(const TorusGrid& grid, const std::vector<ModeVector>& a, const std::vector<ModeVector>& b,
                    double s) {
    double worst = 0.0;
    ModeVector diff(grid.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        for (std::size_t k = 0; k < grid.size(); ++k) diff[k] = a[n][k] - b[n][k];
        worst = std::max(worst, hs_norm(grid, diff, s));
    }
    return worst;
}

}  // namespace

ModeVector gaussian_band_data(const TorusGrid& grid, double target_norm, double s, double width, double cutoff) {
    if (!(width > 0.0) || !(cutoff >= 0.0)) throw InvalidArgument("gaussian_band_data: width must be > 0, cutoff >= 0");
    if (!(target_norm >= 0.0)) throw InvalidArgument("gaussian_band_data: target_norm must be >= 0");
    ModeVector c = torus_coefficients(grid, [&](double xi) {
        return std::abs(xi) <= cutoff ? std::exp(-xi * xi / (2.0 * width * width)) : 0.0;
    });
    const double n = hs_norm(grid, c, s);
    if (n == 0.0) throw InvalidArgument("gaussian_band_data: cutoff retains no modes");
    for (auto& z : c) z *= target_norm / n;
    return c;
}

ModeVector apply_Vc(std::span<const Complex> coeffs, double t, const TorusGrid& grid, DispersionParams params) {
    require_size(coeffs, grid, "apply_Vc");
    ModeVector out(coeffs.begin(), coeffs.end());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] *= std::cos(t * gamma(grid.wavenumber(j), params));
    return out;
}

ModeVector apply_Vs(std::span<const Complex> coeffs, double t, const TorusGrid& grid, DispersionParams params) {
    require_size(coeffs, grid, "apply_Vs");
    ModeVector out(coeffs.begin(), coeffs.end());
    for (std::size_t j = 0; j < grid.size(); ++j) out[j] *= sine_factor(t, gamma(grid.wavenumber(j), params));
    return out;
}

TorusState linear_evolve(std::span<const Complex> phi, std::span<const Complex> psi, double t, const TorusGrid& grid,
                         DispersionParams params) {
    require_size(phi, grid, "linear_evolve");
    require_size(psi, grid, "linear_evolve");
    const ModeVector w = velocity_data(psi, grid);
    TorusState s{grid, ModeVector(grid.size()), ModeVector(grid.size()), t};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double g = gamma(grid.wavenumber(j), params);
        const double c = std::cos(t * g);
        const double sn = std::sin(t * g);
        s.u_hat[j] = c * phi[j] + sine_factor(t, g) * w[j];
        s.v_hat[j] = -g * sn * phi[j] + c * w[j];
    }
    return s;
}

std::vector<double> mode_energy(const TorusState& state, DispersionParams params) {
    std::vector<double> e(state.grid.size());
    for (std::size_t j = 0; j < e.size(); ++j) {
        const double g = gamma(state.grid.wavenumber(j), params);
        e[j] = std::norm(state.v_hat[j]) + g * g * std::norm(state.u_hat[j]);
    }
    return e;
}

NonlinearTerm::NonlinearTerm(TorusGrid grid, double dealias_fraction)
    : grid_(grid), cutoff_(0), plan_(std::make_unique<detail::FftPlan>(grid.size())) {
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw InvalidArgument("NonlinearTerm: dealias_fraction must lie in (0, 1]");
    const auto n = static_cast<long>(grid.size());
    cutoff_ = static_cast<long>(std::floor(dealias_fraction * static_cast<double>(n) / 2.0 + 1e-12));
    // Exactly n/3 retained modes would let k1 + k2 = 2n/3 fold back onto -n/3.
    if (dealias_fraction <= 2.0 / 3.0 + 1e-12) cutoff_ = std::min(cutoff_, (n - 1) / 3);
}

NonlinearTerm::~NonlinearTerm() = default;
NonlinearTerm::NonlinearTerm(NonlinearTerm&&) noexcept = default;
NonlinearTerm& NonlinearTerm::operator=(NonlinearTerm&&) noexcept = default;

bool NonlinearTerm::retained(std::size_t j) const noexcept {
    const long k = grid_.mode_index(j);
    // The Nyquist mode has no partner and is always dropped.
    return std::labs(k) <= cutoff_ && k != -static_cast<long>(grid_.size() / 2);
}

ModeVector NonlinearTerm::operator()(std::span<const Complex> u_hat) const {
    require_size(u_hat, grid_, "nonlinearity");
    const std::size_t n = grid_.size();
    Complex* buf = plan_->data();
    for (std::size_t j = 0; j < n; ++j) buf[j] = retained(j) ? u_hat[j] : Complex{};
    plan_->backward();  // physical values u(x_j)
    for (std::size_t j = 0; j < n; ++j) buf[j] *= buf[j];
    plan_->forward();
    ModeVector out(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!retained(j)) continue;
        const double xi = grid_.wavenumber(j);
        out[j] = -xi * xi * buf[j] * inv_n;
    }
    enforce_hermitian(grid_, out);
    return out;
}

ModeVector nonlinearity(const TorusState& state, double dealias_fraction) {
    return NonlinearTerm(state.grid, dealias_fraction)(state.u_hat);
}

void SolverConfig::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("SolverConfig: T must be positive");
    if (n_time_nodes < 3 || n_time_nodes % 2 == 0) throw InvalidArgument("SolverConfig: n_time_nodes must be odd and >= 3");
    if (!(picard_tol > 0.0)) throw InvalidArgument("SolverConfig: picard_tol must be positive");
    if (max_picard_iters < 1) throw InvalidArgument("SolverConfig: max_picard_iters must be >= 1");
    if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
        throw InvalidArgument("SolverConfig: dealias_fraction must lie in (0, 1]");
}

Trajectory picard_solve(std::span<const Complex> phi, std::span<const Complex> psi, const TorusGrid& grid,
                        DispersionParams params, const SolverConfig& config) {
    config.validate();
    require_size(phi, grid, "picard_solve");
    require_size(psi, grid, "picard_solve");
    const FreeFlow free = free_flow(phi, psi, grid, params, config);
    const DuhamelOperator op(grid, params, config);

    std::vector<ModeVector> u = free.u, v = free.v, u_next, v_next;
    std::vector<double> residuals;
    for (std::size_t it = 1; it <= config.max_picard_iters; ++it) {
        op.apply(free, u, u_next, v_next);
        const double r = sup_distance(grid, u_next, u, config.sobolev_s);
        residuals.push_back(r);
        u.swap(u_next);
        v.swap(v_next);
        if (!std::isfinite(r) || r > 1e100) break;
        if (r < config.picard_tol) {
            Trajectory t = pack(grid, config, u, v);
            t.iterations = it;
            t.residuals = std::move(residuals);
            return t;
        }
    }
    const double last = residuals.back();
    const double prev = residuals.size() > 1 ? residuals[residuals.size() - 2] : last;
    throw NoContraction("picard_solve: no contraction after " + std::to_string(residuals.size()) +
                            " iterations (residuals " + std::to_string(prev) + " -> " + std::to_string(last) +
                            "); try a smaller T",
                        prev, last);
}

Trajectory duhamel_map(std::span<const Complex> phi, std::span<const Complex> psi, const Trajectory& trajectory,
                       const TorusGrid& grid, DispersionParams params, const SolverConfig& config) {
    config.validate();
    if (trajectory.states.size() != config.n_time_nodes)
        throw InvalidArgument("duhamel_map: trajectory length must equal n_time_nodes");
    const FreeFlow free = free_flow(phi, psi, grid, params, config);
    const DuhamelOperator op(grid, params, config);
    std::vector<ModeVector> u;
    for (const auto& s : trajectory.states) u.push_back(s.u_hat);
    std::vector<ModeVector> u_out, v_out;
    op.apply(free, u, u_out, v_out);
    return pack(grid, config, u_out, v_out);
}

Trajectory step_oracle_solve(std::span<const Complex> phi, std::span<const Complex> psi, const TorusGrid& grid,
                             DispersionParams params, const SolverConfig& config, std::size_t substeps) {
    config.validate();
    require_size(phi, grid, "step_oracle_solve");
    require_size(psi, grid, "step_oracle_solve");
    if (substeps < 1) throw InvalidArgument("step_oracle_solve: substeps must be >= 1");
    const std::size_t nm = grid.size();
    const double h = config.time_step() / static_cast<double>(substeps);
    const auto g = gammas(grid, params);
    const NonlinearTerm nonlinear(grid, config.dealias_fraction);

    std::vector<double> c_half(nm), s_half(nm), c_full(nm), s_full(nm);
    for (std::size_t k = 0; k < nm; ++k) {
        c_half[k] = std::cos(0.5 * h * g[k]);
        s_half[k] = sine_factor(0.5 * h, g[k]);
        c_full[k] = std::cos(h * g[k]);
        s_full[k] = sine_factor(h, g[k]);
    }
    // Exact linear flow over one (half) substep, in place on (u, v).
    auto propagate = [&](ModeVector& u, ModeVector& v, const std::vector<double>& c, const std::vector<double>& s) {
        for (std::size_t k = 0; k < nm; ++k) {
            const Complex u0 = u[k], v0 = v[k];
            u[k] = c[k] * u0 + s[k] * v0;
            v[k] = -g[k] * g[k] * s[k] * u0 + c[k] * v0;
        }
    };
    auto force = [&](const ModeVector& u) {
        ModeVector f = nonlinear(u);
        for (auto& z : f) z *= config.coupling;
        return f;
    };

    TorusState start = linear_evolve(phi, psi, 0.0, grid, params);
    ModeVector u = start.u_hat, v = start.v_hat;
    auto size_of = [&](const ModeVector& a, const ModeVector& b) {
        double m = 0.0;
        for (std::size_t k = 0; k < nm; ++k) m = std::max({m, std::abs(a[k]), std::abs(b[k])});
        return m;
    };
    const double initial = size_of(u, v);

    std::vector<ModeVector> us{u}, vs{v};
    const ModeVector zero(nm);
    for (std::size_t node = 1; node < config.n_time_nodes; ++node) {
        for (std::size_t step = 0; step < substeps; ++step) {
            const ModeVector k1 = force(u);
            // y_a = E(h/2)(y + h/2 k1)
            ModeVector ua = u, va = v;
            for (std::size_t k = 0; k < nm; ++k) va[k] += 0.5 * h * k1[k];
            propagate(ua, va, c_half, s_half);
            const ModeVector k2 = force(ua);
            // y_b = E(h/2) y + h/2 k2
            ModeVector uh = u, vh = v;
            propagate(uh, vh, c_half, s_half);
            ModeVector ub = uh, vb = vh;
            for (std::size_t k = 0; k < nm; ++k) vb[k] += 0.5 * h * k2[k];
            const ModeVector k3 = force(ub);
            // y_c = E(h) y + h E(h/2) k3
            ModeVector uf = u, vf = v;
            propagate(uf, vf, c_full, s_full);
            ModeVector e3u = zero, e3v = k3;
            propagate(e3u, e3v, c_half, s_half);
            ModeVector uc = uf, vc = vf;
            for (std::size_t k = 0; k < nm; ++k) {
                uc[k] += h * e3u[k];
                vc[k] += h * e3v[k];
            }
            const ModeVector k4 = force(uc);
            // y+ = E(h) y + h/6 (E(h) k1 + 2 E(h/2)(k2 + k3) + k4)
            ModeVector e1u = zero, e1v = k1;
            propagate(e1u, e1v, c_full, s_full);
            ModeVector e23u = zero, e23v(nm);
            for (std::size_t k = 0; k < nm; ++k) e23v[k] = k2[k] + k3[k];
            propagate(e23u, e23v, c_half, s_half);
            for (std::size_t k = 0; k < nm; ++k) {
                uf[k] += h / 6.0 * (e1u[k] + 2.0 * e23u[k]);
                vf[k] += h / 6.0 * (e1v[k] + 2.0 * e23v[k] + k4[k]);
            }
            u = std::move(uf);
            v = std::move(vf);
            enforce_hermitian(grid, u);
            enforce_hermitian(grid, v);
            const double now = size_of(u, v);
            if (!std::isfinite(now) || (initial > 0.0 && now > 1e10 * initial))
                throw Instability("step_oracle_solve: norm growth beyond 1e10 (reduce the step size)");
        }
        us.push_back(u);
        vs.push_back(v);
    }
    Trajectory t = pack(grid, config, us, vs);
    t.iterations = 1;
    return t;
}

double trajectory_distance(const Trajectory& a, const Trajectory& b, double s) {
    if (a.states.size() != b.states.size() || a.states.empty())
        throw InvalidArgument("trajectory_distance: trajectories must share their time nodes");
    const TorusGrid& grid = a.states.front().grid;
    double worst = 0.0;
    ModeVector diff(grid.size());
    for (std::size_t n = 0; n < a.states.size(); ++n) {
        for (std::size_t k = 0; k < grid.size(); ++k) diff[k] = a.states[n].u_hat[k] - b.states[n].u_hat[k];
        worst = std::max(worst, hs_norm(grid, diff, s));
    }
    return worst;
}

LipschitzReport lipschitz_probe(std::span<const Complex> phi, std::span<const Complex> psi,
                                std::span<const Perturbation> perturbations, const TorusGrid& grid,
                                DispersionParams params, const SolverConfig& config, double s) {
    SolverConfig cfg = config;
    cfg.sobolev_s = s;
    const Trajectory base = picard_solve(phi, psi, grid, params, cfg);
    LipschitzReport report;
    for (const auto& p : perturbations) {
        require_size(p.dphi, grid, "lipschitz_probe");
        require_size(p.dpsi, grid, "lipschitz_probe");
        const double dphi = hs_norm(grid, p.dphi, s);
        const double dpsi = hs_norm(grid, p.dpsi, s - 1.0);
        const double data_distance = std::sqrt(dphi * dphi + dpsi * dpsi);
        if (data_distance == 0.0) {
            report.ratios.emplace_back(std::nullopt);
            continue;
        }
        ModeVector phi2(phi.begin(), phi.end()), psi2(psi.begin(), psi.end());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            phi2[k] += p.dphi[k];
            psi2[k] += p.dpsi[k];
        }
        const Trajectory other = picard_solve(phi2, psi2, grid, params, cfg);
        const double ratio = trajectory_distance(base, other, s) / data_distance;
        report.ratios.emplace_back(ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
    }
    return report;
}

}  // namespace bsq
