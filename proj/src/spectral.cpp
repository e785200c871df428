#include "bsq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bsq/errors.hpp"
#include "fft.hpp"

namespace bsq {

namespace {

using detail::FftPlan;

long integral_offset(const FrequencyGrid& g, const char* who) {
    const double off = g.lattice_offset();
    const double r = std::round(off);
    if (std::abs(off - r) > 1e-9 * std::max(1.0, std::abs(off)))
        throw InvalidArgument(std::string(who) + ": grid is not lattice aligned (xi_min/spacing not integral)");
    return static_cast<long>(r);
}

void require_same_spacing(const FrequencyGrid& a, const FrequencyGrid& b, const char* who) {
    if (std::abs(a.spacing() - b.spacing()) > 1e-12 * a.spacing())
        throw InvalidArgument(std::string(who) + ": grids must share a spacing");
}

/// Offset of a sum lattice; snapped to an integer when the inputs cancel up to rounding
/// so that a node lands exactly on zero.
double sum_offset(double a, double b) {
    const double s = a + b;
    const double r = std::round(s);
    return std::abs(s - r) <= 1e-9 * std::max(1.0, std::abs(s)) ? r : s;
}

double trapezoid_weight(std::size_t k, std::size_t n) { return (k == 0 || k + 1 == n) ? 0.5 : 1.0; }

void check_lost_mass(double kept, double total, const char* who) {
    if (total <= 0.0) return;
    const double lost = (total - kept) / total;
    if (lost > kBoundaryMassTolerance)
        throw SupportOverflow(std::string(who) + ": convolution support exceeds the grid span", lost);
}

}  // namespace

Complex quadrature(const SpectralField& field) {
    const std::size_t n = field.size();
    Complex sum{};
    for (std::size_t k = 0; k < n; ++k) sum += trapezoid_weight(k, n) * field[k];
    return sum * field.grid().spacing();
}

Complex quadrature(const SpaceTimeField& field) {
    const std::size_t nt = field.n_tau();
    const std::size_t nx = field.n_xi();
    Complex sum{};
    for (std::size_t i = 0; i < nt; ++i) {
        Complex row{};
        for (std::size_t j = 0; j < nx; ++j) row += trapezoid_weight(j, nx) * field.at(i, j);
        sum += trapezoid_weight(i, nt) * row;
    }
    return sum * field.grid().tau_axis.spacing() * field.grid().xi_axis.spacing();
}

Complex quadrature(const BandedField& field) {
    Complex sum{};
    for (std::size_t j = 0; j < field.n_columns(); ++j)
        for (const auto& z : field.column(j).values) sum += z;
    return sum * field.tau_step() * field.xi_axis().spacing();
}

SpectralField convolve_full(const SpectralField& f, const SpectralField& g) {
    const auto& gf = f.grid();
    const auto& gg = g.grid();
    require_same_spacing(gf, gg, "convolve_full");
    const std::size_t n_out = f.size() + g.size() - 1;
    const std::size_t n_fft = detail::fft_friendly_size(n_out);

    FftPlan a(n_fft), b(n_fft);
    std::fill_n(a.data(), n_fft, Complex{});
    std::fill_n(b.data(), n_fft, Complex{});
    std::copy(f.values().begin(), f.values().end(), a.data());
    std::copy(g.values().begin(), g.values().end(), b.data());
    a.forward();
    b.forward();
    for (std::size_t k = 0; k < n_fft; ++k) a.data()[k] *= b.data()[k];
    a.backward();

    const double scale = gf.spacing() / static_cast<double>(n_fft);
    std::vector<Complex> out(a.data(), a.data() + n_out);
    for (auto& z : out) z *= scale;
    auto grid = FrequencyGrid::on_lattice(sum_offset(gf.lattice_offset(), gg.lattice_offset()), gf.spacing(), n_out);
    return SpectralField(grid, std::move(out));
}

SpectralField convolve(const SpectralField& f, const SpectralField& g) {
    if (!f.grid().same_as(g.grid())) throw InvalidArgument("convolve: fields must share a grid");
    const long off = integral_offset(f.grid(), "convolve");
    SpectralField full = convolve_full(f, g);
    // Input node k sits at full index k - off.
    const std::size_t n = f.size();
    std::vector<Complex> kept(n);
    double total = 0.0, inside = 0.0;
    for (std::size_t p = 0; p < full.size(); ++p) total += std::abs(full[p]);
    for (std::size_t k = 0; k < n; ++k) {
        const long p = static_cast<long>(k) - off;
        if (p < 0 || p >= static_cast<long>(full.size())) continue;
        kept[k] = full[static_cast<std::size_t>(p)];
        inside += std::abs(kept[k]);
    }
    check_lost_mass(inside, total, "convolve");
    return SpectralField(f.grid(), std::move(kept));
}

SpaceTimeField convolve2d_full(const SpaceTimeField& f, const SpaceTimeField& g) {
    const auto& ff = f.grid();
    const auto& gg = g.grid();
    require_same_spacing(ff.tau_axis, gg.tau_axis, "convolve2d_full");
    require_same_spacing(ff.xi_axis, gg.xi_axis, "convolve2d_full");
    const std::size_t nt = f.n_tau() + g.n_tau() - 1;
    const std::size_t nx = f.n_xi() + g.n_xi() - 1;
    const std::size_t rt = detail::fft_friendly_size(nt);
    const std::size_t rx = detail::fft_friendly_size(nx);

    FftPlan a(rt, rx), b(rt, rx);
    std::fill_n(a.data(), rt * rx, Complex{});
    std::fill_n(b.data(), rt * rx, Complex{});
    for (std::size_t i = 0; i < f.n_tau(); ++i)
        for (std::size_t j = 0; j < f.n_xi(); ++j) a.data()[i * rx + j] = f.at(i, j);
    for (std::size_t i = 0; i < g.n_tau(); ++i)
        for (std::size_t j = 0; j < g.n_xi(); ++j) b.data()[i * rx + j] = g.at(i, j);
    a.forward();
    b.forward();
    for (std::size_t k = 0; k < rt * rx; ++k) a.data()[k] *= b.data()[k];
    a.backward();

    const double scale = ff.tau_axis.spacing() * ff.xi_axis.spacing() / static_cast<double>(rt * rx);
    std::vector<Complex> out(nt * nx);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < nx; ++j) out[i * nx + j] = a.data()[i * rx + j] * scale;
    SpaceTimeGrid grid{
        FrequencyGrid::on_lattice(sum_offset(ff.tau_axis.lattice_offset(), gg.tau_axis.lattice_offset()), ff.tau_axis.spacing(), nt),
        FrequencyGrid::on_lattice(sum_offset(ff.xi_axis.lattice_offset(), gg.xi_axis.lattice_offset()), ff.xi_axis.spacing(), nx)};
    return SpaceTimeField(grid, std::move(out));
}

SpaceTimeField convolve2d(const SpaceTimeField& f, const SpaceTimeField& g) {
    if (!f.grid().same_as(g.grid())) throw InvalidArgument("convolve2d: fields must share a grid");
    const long off_t = integral_offset(f.grid().tau_axis, "convolve2d");
    const long off_x = integral_offset(f.grid().xi_axis, "convolve2d");
    SpaceTimeField full = convolve2d_full(f, g);
    const std::size_t nt = f.n_tau(), nx = f.n_xi();
    std::vector<Complex> kept(nt * nx);
    double total = 0.0, inside = 0.0;
    for (const auto& z : full.values()) total += std::abs(z);
    for (std::size_t i = 0; i < nt; ++i) {
        const long pi = static_cast<long>(i) - off_t;
        if (pi < 0 || pi >= static_cast<long>(full.n_tau())) continue;
        for (std::size_t j = 0; j < nx; ++j) {
            const long pj = static_cast<long>(j) - off_x;
            if (pj < 0 || pj >= static_cast<long>(full.n_xi())) continue;
            const Complex z = full.at(static_cast<std::size_t>(pi), static_cast<std::size_t>(pj));
            kept[i * nx + j] = z;
            inside += std::abs(z);
        }
    }
    check_lost_mass(inside, total, "convolve2d");
    return SpaceTimeField(f.grid(), std::move(kept));
}

BandedField convolve_banded(const BandedField& f, const BandedField& g) {
    require_same_spacing(f.xi_axis(), g.xi_axis(), "convolve_banded");
    if (std::abs(f.tau_step() - g.tau_step()) > 1e-12 * f.tau_step())
        throw InvalidArgument("convolve_banded: fields must share a tau step");
    const std::size_t nf = f.n_columns(), ng = g.n_columns();
    const std::size_t n_out = nf + ng - 1;

    // First pass: band extents per output column.
    std::vector<long> lo(n_out, 0), hi(n_out, -1);
    std::vector<bool> used(n_out, false);
    for (std::size_t a = 0; a < nf; ++a) {
        const auto& ca = f.column(a);
        if (ca.values.empty()) continue;
        for (std::size_t b = 0; b < ng; ++b) {
            const auto& cb = g.column(b);
            if (cb.values.empty()) continue;
            const std::size_t m = a + b;
            const long l = ca.first + cb.first;
            const long h = l + static_cast<long>(ca.values.size() + cb.values.size()) - 2;
            if (!used[m]) {
                lo[m] = l;
                hi[m] = h;
                used[m] = true;
            } else {
                lo[m] = std::min(lo[m], l);
                hi[m] = std::max(hi[m], h);
            }
        }
    }

    std::vector<BandColumn> out(n_out);
    for (std::size_t m = 0; m < n_out; ++m) {
        if (!used[m]) continue;
        out[m].first = lo[m];
        out[m].values.assign(static_cast<std::size_t>(hi[m] - lo[m] + 1), Complex{});
    }
    const double scale = f.tau_step() * f.xi_axis().spacing();
    for (std::size_t a = 0; a < nf; ++a) {
        const auto& ca = f.column(a);
        for (std::size_t b = 0; b < ng; ++b) {
            const auto& cb = g.column(b);
            if (ca.values.empty() || cb.values.empty()) continue;
            auto& dst = out[a + b];
            Complex* base = dst.values.data() + (ca.first + cb.first - dst.first);
            for (std::size_t p = 0; p < ca.values.size(); ++p) {
                const Complex x = ca.values[p] * scale;
                Complex* row = base + p;
                for (std::size_t q = 0; q < cb.values.size(); ++q) row[q] += x * cb.values[q];
            }
        }
    }
    auto axis = FrequencyGrid::on_lattice(sum_offset(f.xi_axis().lattice_offset(), g.xi_axis().lattice_offset()),
                                          f.xi_axis().spacing(), n_out);
    return BandedField(axis, f.tau_step(), std::move(out));
}

SpectralField dft_forward(std::span<const Complex> samples, double period) {
    const std::size_t n = samples.size();
    if (n < 2) throw InvalidArgument("dft_forward: need at least 2 samples");
    if (!(period > 0.0)) throw InvalidArgument("dft_forward: period must be positive");
    FftPlan plan(n);
    std::copy(samples.begin(), samples.end(), plan.data());
    plan.forward();
    const long kmin = -static_cast<long>(n / 2);
    const double scale = period / static_cast<double>(n);
    std::vector<Complex> out(n);
    const long ln = static_cast<long>(n);
    for (long i = 0; i < ln; ++i) {
        const long q = ((kmin + i) % ln + ln) % ln;
        out[static_cast<std::size_t>(i)] = plan.data()[q] * scale;
    }
    auto grid = FrequencyGrid::on_lattice(static_cast<double>(kmin), 2.0 * std::numbers::pi / period, n);
    return SpectralField(grid, std::move(out));
}

std::vector<Complex> dft_inverse(const SpectralField& field, std::size_t n_points) {
    const std::size_t n = field.size();
    if (n_points != n) throw InvalidArgument("dft_inverse: n_points must equal the field size");
    const long kmin = -static_cast<long>(n / 2);
    if (std::abs(field.grid().lattice_offset() - static_cast<double>(kmin)) > 1e-9)
        throw InvalidArgument("dft_inverse: field is not on the dft_forward lattice");
    const double period = 2.0 * std::numbers::pi / field.grid().spacing();
    FftPlan plan(n);
    const long ln = static_cast<long>(n);
    for (long i = 0; i < ln; ++i) {
        const long q = ((kmin + i) % ln + ln) % ln;
        plan.data()[q] = field[static_cast<std::size_t>(i)];
    }
    plan.backward();
    std::vector<Complex> out(plan.data(), plan.data() + n);
    for (auto& z : out) z /= period;
    return out;
}

}  // namespace bsq
