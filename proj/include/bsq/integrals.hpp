#pragma once

#include <cstddef>
#include <cstdint>

namespace bsq {

/// Numerical check of the weighted convolution estimate
///   int <x - lambda>^-p <x - mu>^-q dx  <~  <lambda - mu>^-r,
/// r = min(p, q, p + q - 1) (p, q > 0, p + q > 1).
struct ConvolutionCheck {
    double integral = 0.0;
    double exponent = 0.0;  ///< r
    double product = 0.0;   ///< integral * <lambda - mu>^r, bounded uniformly in lambda, mu
};

ConvolutionCheck check_weighted_convolution(double lambda, double mu, double p, double q);

/// Largest product over `sample_count` random (lambda, mu, p, q) draws with
/// |lambda - mu| up to 10^4 and p, q from {1.5, 2, 3} (plus the pairs involving 1).
double weighted_convolution_battery(std::uint64_t seed, std::size_t sample_count);

/// int <a0 + a1|x| + a2 x^2 + a3|x|^3>^-q dx over the real line (a3 != 0, q > 1/3).
double cubic_bracket_integral(double a0, double a1, double a2, double a3, double q);

}  // namespace bsq
