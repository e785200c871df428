#pragma once

namespace bsq {

/// Sign of the fourth-order term: +1 ("bad" variant) or -1 ("good" variant).
class DispersionParams {
public:
    explicit DispersionParams(int beta);
    int beta() const noexcept { return beta_; }

private:
    int beta_;
};

/// gamma(xi) = sqrt(xi^2 - beta xi^4 + xi^6), the angular frequency of mode xi.
double gamma(double xi, DispersionParams params);

/// rho(xi) = xi^3 - beta xi / 2, the KdV-type surrogate of gamma (odd in xi).
double rho(double xi, DispersionParams params);

/// xi^2 / gamma(xi), with the removable singularity at 0 filled by 0. Lies in [0, 1].
double multiplier(double xi, DispersionParams params);

/// <x> = 1 + |x|.
inline double bracket(double x) noexcept { return 1.0 + (x < 0 ? -x : x); }

/// (1 + |x - y^{3/2} + (beta/2) y^{1/2}|) / (1 + |x - sqrt(y - beta y^2 + y^3)|) for x, y >= 0.
double symbol_equivalence_ratio(double x, double y, DispersionParams params);

/// sup over xi of gamma(xi) - rho(|xi|). The rho-gamma gap is always in [0, this].
///
/// For beta = -1 the gap stays below 1/2. For beta = +1 it peaks at 0.6157 near
/// |xi| = 0.659, so the upper bound gamma <= rho + 1/2 fails for |xi| in (0.3904, 1).
double max_symbol_gap(DispersionParams params);

/// Sharp constant c with 1/c <= symbol_equivalence_ratio <= c: 1 + max_symbol_gap.
inline double symbol_equivalence_constant(DispersionParams params) { return 1.0 + max_symbol_gap(params); }

}  // namespace bsq
