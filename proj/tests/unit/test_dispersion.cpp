#include <doctest.h>

#include <cmath>

#include "bsq/dispersion.hpp"
#include "bsq/errors.hpp"
#include "oracles.hpp"

using namespace bsq;

namespace {
const DispersionParams bad(1), good(-1);
}

TEST_SUITE("dispersion") {

TEST_CASE("beta must be +-1") {
    CHECK_THROWS_AS(DispersionParams(0), InvalidArgument);
    CHECK_THROWS_AS(DispersionParams(2), InvalidArgument);
    CHECK(DispersionParams(-1).beta() == -1);
}

TEST_CASE("gamma values") {
    CHECK(gamma(0.0, bad) == 0.0);
    CHECK(gamma(1.0, bad) == 1.0);
    const double g2 = gamma(2.0, bad);
    CHECK(g2 == doctest::Approx(7.2111026).epsilon(1e-8));
    CHECK(g2 * g2 == doctest::Approx(52.0).epsilon(1e-14));
    CHECK(gamma(1.0, good) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("rho values") {
    CHECK(rho(1.0, bad) == 0.5);
    CHECK(rho(2.0, bad) == 7.0);
    CHECK(rho(0.0, bad) == 0.0);
    CHECK(rho(1.0, good) == 1.5);
}

TEST_CASE("multiplier values") {
    CHECK(multiplier(0.0, bad) == 0.0);
    CHECK(multiplier(0.0, good) == 0.0);
    CHECK(std::abs(multiplier(1.0, bad) - 1.0) <= 1e-15);
    CHECK(std::abs(multiplier(-1.0, bad) - 1.0) <= 1e-15);
    // 1 - 2 xi^2 + xi^4 = (1 - xi^2)^2 makes xi = 1 the equality point for beta = +1
    for (double xi : {0.3, 0.9, 1.1, 4.0}) {
        const double gap = gamma(xi, bad) * gamma(xi, bad) - std::pow(xi, 4);
        CHECK(gap == doctest::Approx(xi * xi * std::pow(1 - xi * xi, 2)).epsilon(1e-10));
    }
}

TEST_CASE("multiplier stays in [0, 1]") {
    oracle::Rng rng(21);
    for (const auto& P : {bad, good}) {
        double hi = 0.0, lo = 1.0;
        for (int k = 0; k < 200000; ++k) {
            const double m = multiplier(rng.uniform(-100, 100), P);
            hi = std::max(hi, m);
            lo = std::min(lo, m);
        }
        CHECK(hi <= 1.0 + 1e-12);
        CHECK(lo >= 0.0);
    }
}

TEST_CASE("bracket") {
    CHECK(bracket(0.0) == 1.0);
    CHECK(bracket(-3.0) == 4.0);
    CHECK(bracket(2.5) == 3.5);
}

TEST_CASE("symbol equivalence ratio examples") {
    CHECK(symbol_equivalence_ratio(0.0, 0.0, bad) == 1.0);
    CHECK(symbol_equivalence_ratio(1.0, 1.0, bad) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(symbol_equivalence_ratio(-1.0, 1.0, bad), InvalidArgument);
    CHECK_THROWS_AS(symbol_equivalence_ratio(1.0, -1.0, bad), InvalidArgument);
}

TEST_CASE("symbol equivalence ratio on the [0, 1e4]^2 grid") {
    for (const auto& P : {bad, good}) {
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < 1000; ++i)
            for (int j = 0; j < 1000; ++j) {
                const double r = symbol_equivalence_ratio(10.0 * i, 10.0 * j, P);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
        CHECK(hi <= 1.5 + 1e-9);
        CHECK(lo >= 2.0 / 3.0 - 1e-9);
    }
}

TEST_CASE("sharp equivalence constant depends on beta") {
    // The ratio reaches 1 + sup(gamma - rho) at x = gamma(xi), y = xi^2.
    CHECK(max_symbol_gap(bad) == doctest::Approx(0.61566).epsilon(1e-4));
    CHECK(max_symbol_gap(good) < 0.5);
    for (const auto& P : {bad, good}) {
        const double c = symbol_equivalence_constant(P);
        double hi = 0.0, lo = 1e300;
        for (int k = 1; k <= 40000; ++k) {
            const double xi = 4.0 * k / 40000.0;
            const double y = xi * xi;
            hi = std::max(hi, symbol_equivalence_ratio(gamma(xi, P), y, P));
            lo = std::min(lo, symbol_equivalence_ratio(std::max(0.0, rho(xi, P)), y, P));
        }
        CHECK(hi <= c + 1e-9);
        CHECK(hi >= c - 1e-6);
        CHECK(lo >= 1.0 / c - 1e-9);
    }
    // Hence for beta = +1 the constant 3/2 is exceeded at small y.
    CHECK(symbol_equivalence_ratio(gamma(0.659, bad), 0.659 * 0.659, bad) > 1.6);
}

TEST_CASE("rho sits below gamma") {
    for (const auto& P : {bad, good}) {
        for (int k = 0; k <= 20000; ++k) {
            const double xi = k == 0 ? 0.0 : std::pow(10.0, -4.0 + 8.0 * k / 20000.0);
            const double g = gamma(xi, P), r = rho(xi, P);
            CHECK(r - g <= 1e-12 * std::max(1.0, g));
        }
    }
}

TEST_CASE("gamma - rho <= 1/2 for beta = -1 and outside (0.1524, 1) in y for beta = +1") {
    for (int k = 0; k <= 20000; ++k) {
        const double xi = k == 0 ? 0.0 : std::pow(10.0, -4.0 + 8.0 * k / 20000.0);
        const double y = xi * xi;
        CHECK(gamma(xi, good) - rho(xi, good) <= 0.5 + 1e-9);
        if (y <= 0.1524 || y >= 1.0) CHECK(gamma(xi, bad) - rho(xi, bad) <= 0.5 + 1e-9);
    }
    CHECK(gamma(0.659, bad) - rho(0.659, bad) > 0.6);
}

TEST_CASE("gamma grows like |xi|^3") {
    for (const auto& P : {bad, good})
        for (double xi : {1e3, -1e3, 3.7e3, 1e5, 1e6}) CHECK(std::abs(gamma(xi, P) / std::pow(std::abs(xi), 3) - 1.0) <= 1e-5);
}

TEST_CASE("parity") {
    oracle::Rng rng(2);
    for (const auto& P : {bad, good})
        for (int k = 0; k < 10000; ++k) {
            const double xi = rng.uniform(-50, 50);
            CHECK(gamma(-xi, P) == gamma(xi, P));
            CHECK(multiplier(-xi, P) == multiplier(xi, P));
            CHECK(rho(-xi, P) == -rho(xi, P));
        }
}

}
