// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blockdpp/hermite.hpp"
#include "blockdpp/quadrature.hpp"
#include "oracle_helpers.hpp"

using namespace blockdpp;

TEST_CASE("ground state closed form") {
    const double norm = std::pow(2.0 * std::numbers::pi, -0.25);
    CHECK(psi(0, 0.0) == doctest::Approx(norm).epsilon(1e-14));
    CHECK(psi(0, 1.7) == doctest::Approx(norm * std::exp(-1.7 * 1.7 / 4.0)).epsilon(1e-13));
    CHECK(psi(1, 0.0) == 0.0);
}

TEST_CASE("orthonormality through the quadrature oracle") {
    const QuadratureSpec quad{1e-11, 1e-13, 40000, 16};
    double worst = 0.0;
    for (int j = 0; j <= 20; ++j)
        for (int k = j; k <= 20; ++k) {
            const double integral = integrate_1d(
                [&](double x) { return psi(j, x) * psi(k, x); }, -40.0, 40.0, quad);
            worst = std::max(worst, std::abs(integral - (j == k ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("derivative identity against finite differences") {
    CHECK(psi_prime(0, 0.0) == 0.0);
    CHECK(psi_prime(1, 0.0) == doctest::Approx(psi(0, 0.0)).epsilon(1e-14));
    const double fd =
        oracle::central_diff([](double x) { return psi(10, x); }, 1.3, 1e-5);
    CHECK(std::abs(psi_prime(10, 1.3) - fd) < 1e-7);
}

TEST_CASE("parity of the wavefunctions") {
    for (int k : {3, 8, 17}) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(psi(k, -2.31) == doctest::Approx(sign * psi(k, 2.31)).epsilon(1e-14));
    }
}

TEST_CASE("high levels survive where the Gaussian seed underflows") {
    // At x = 150 the seed exp(-x^2/4) is ~1e-2443, far below double range,
    // yet psi_k for k near x^2/4 is order one.
    const double v = psi(10000, 150.0);
    CHECK(std::isfinite(v));
    CHECK(std::abs(v) > 1e-3);
    // Deep in the forbidden region the value underflows to zero, accepted.
    CHECK(psi(5, 150.0) == 0.0);
}

TEST_CASE("scaled sweep agrees with single evaluations") {
    const auto sweep = hermite_scaled_sweep(50, 0.77);
    for (int k : {0, 1, 7, 50}) {
        const auto& s = sweep[static_cast<std::size_t>(k)];
        const double v = std::ldexp(s.mantissa, static_cast<int>(s.exponent));
        CHECK(v == doctest::Approx(psi(k, 0.77)).epsilon(1e-14));
    }
}

TEST_CASE("level range validation") {
    CHECK_THROWS_AS(psi(-1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(psi(1000001, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(psi(3, std::nan("")), std::invalid_argument);
}
