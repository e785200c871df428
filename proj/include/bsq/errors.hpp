#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

/// Precondition violated by the caller (bad sizes, mismatched grids, out-of-range parameters).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An experiment specification that cannot be realised (grid does not cover a support, etc.).
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A truncated convolution lost mass outside the retained window.
class SupportOverflow : public std::runtime_error {
public:
    SupportOverflow(const std::string& what, double lost_fraction)
        : std::runtime_error(what), lost_fraction_(lost_fraction) {}
    double lost_fraction() const noexcept { return lost_fraction_; }

private:
    double lost_fraction_;
};

/// Picard iteration failed to contract within the iteration budget.
class NoContraction : public std::runtime_error {
public:
    NoContraction(const std::string& what, double previous_residual, double last_residual)
        : std::runtime_error(what), previous_(previous_residual), last_(last_residual) {}
    double previous_residual() const noexcept { return previous_; }
    double last_residual() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

/// Explicit time stepping blew up (norm growth beyond the detection threshold).
class Instability : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bsq
