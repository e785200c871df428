#pragma once

#include <span>

#include "bsq/dispersion.hpp"
#include "bsq/field.hpp"
#include "bsq/torus.hpp"

namespace bsq {

/// Which characteristic the X^{s,b} modulation weight measures |tau| against.
enum class WeightVariant {
    gamma,  ///< <|tau| - gamma(xi)>
    rho,    ///< <|tau| - |xi|^3 + (beta/2)|xi|> = <|tau| - rho(|xi|)>
};

/// <xi>^s times the modulation weight ^ b.
double xsb_weight(double tau, double xi, double s, double b, DispersionParams params, WeightVariant variant);

/// (int <xi>^{2s} |g^|^2 dxi)^{1/2} by the trapezoid rule.
double hs_norm(const SpectralField& field, double s);

/// Torus analogue: ghat(xi_k) = period * c_k summed with weight 2 pi / period.
double hs_norm(const TorusGrid& grid, std::span<const Complex> coeffs, double s);

double xsb_norm(const SpaceTimeField& field, double s, double b, DispersionParams params, WeightVariant variant);
double xsb_norm(const BandedField& field, double s, double b, DispersionParams params, WeightVariant variant);

enum class WeightAction { multiply, divide };

/// Pointwise multiplication (or division, to recover u^ from f) by xsb_weight.
SpaceTimeField xsb_apply_weight(const SpaceTimeField& field, double s, double b, DispersionParams params,
                                WeightVariant variant, WeightAction action = WeightAction::multiply);
BandedField xsb_apply_weight(const BandedField& field, double s, double b, DispersionParams params,
                             WeightVariant variant, WeightAction action = WeightAction::multiply);

}  // namespace bsq
