#pragma once

#include <span>
#include <string>
#include <vector>

namespace bsq {

struct SweepPoint {
    double N = 0.0;
    double value = 0.0;
};

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< RMS of log(value) about the fitted line
};

/// Unweighted least squares of log(value) against log(N). Needs >= 3 positive points.
LogLogFit fit_loglog(std::span<const SweepPoint> points);

/// Fits above this residual are flagged unreliable whatever the verdict.
inline constexpr double kReliableResidual = 0.2;

struct ExperimentReport {
    std::string experiment;
    std::vector<SweepPoint> points;
    double fitted_slope = 0.0;
    double fit_residual = 0.0;
    double predicted_exponent = 0.0;
    bool pass = false;
    bool informational = false;  ///< parameters outside the regime where the growth claim applies
    bool reliable() const noexcept { return fit_residual <= kReliableResidual; }
};

}  // namespace bsq
