#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bsq {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   ///< the worst value the check saw
    double threshold = 0.0;  ///< what it was compared against
    std::string detail;
};

struct ChecksOptions {
    std::uint64_t seed = 1;
    /// Multiplies every tolerance slack. Values <= 0 make the slack vanish or go
    /// negative, so a healthy build then reports failures (used to test the harness).
    double tolerance_scale = 1.0;
};

/// Property checks on the symbols, weights and weighted-integral estimates.
std::vector<CheckResult> run_checks(const ChecksOptions& options);

}  // namespace bsq
