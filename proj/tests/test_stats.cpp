// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blockdpp/kernel.hpp"
#include "blockdpp/sampler.hpp"
#include "blockdpp/stats.hpp"
#include "oracle_helpers.hpp"

using namespace blockdpp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("corr_n basics") {
    const BlockSpec gs({{0.0, 1.0}}, 6);
    CHECK(corr_n(gs, std::vector<double>{0.4}) ==
          doctest::Approx(density_finite(gs, 0.4)).epsilon(1e-13));
    // Coincident points collapse the determinant.
    CHECK(std::abs(corr_n(gs, std::vector<double>{0.4, 0.4})) < 1e-13);
}

TEST_CASE("corr_n against brute-force marginalization of |Psi|^2") {
    // N = 2, n = 1: rho_1(x) = 2 int |Psi(x, y)|^2 dy with the Slater
    // determinant built directly from the wavefunctions.
    const BlockSpec two({{0.0, 1.0}}, 2);
    auto slater2 = [](double x, double y) {
        const double det = psi(0, x) * psi(1, y) - psi(1, x) * psi(0, y);
        return det * det / 2.0;
    };
    for (double x : {-0.9, 0.0, 1.3}) {
        const double marginal =
            2.0 * integrate_1d([&](double y) { return slater2(x, y); }, -30.0, 30.0);
        CHECK(corr_n(two, std::vector<double>{x}) ==
              doctest::Approx(marginal).epsilon(1e-9));
    }

    // N = 3, n = 2: rho_2(x1, x2) = 6 int |Psi(x1, x2, y)|^2 dy.
    const BlockSpec three({{0.0, 1.0}}, 3);
    auto slater3 = [](double x1, double x2, double x3) {
        Eigen::Matrix3d m;
        for (int k = 0; k < 3; ++k) {
            m(k, 0) = psi(k, x1);
            m(k, 1) = psi(k, x2);
            m(k, 2) = psi(k, x3);
        }
        const double det = m.determinant();
        return det * det / 6.0;
    };
    const double x1 = -0.6, x2 = 0.8;
    const double marginal =
        6.0 * integrate_1d([&](double y) { return slater3(x1, x2, y); }, -30.0, 30.0);
    CHECK(corr_n(three, std::vector<double>{x1, x2}) ==
          doctest::Approx(marginal).epsilon(1e-9));
}

TEST_CASE("limit-kernel correlations dispatch by kind") {
    const std::vector<double> pts{0.0, 0.6, 1.7};
    // Determinantal kind: plain determinant.
    const LimitKernel sine = LimitKernel::sine();
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = sine(pts[i] - pts[j]);
    CHECK(corr_n(sine, pts) == doctest::Approx(m.determinant()).epsilon(1e-13));

    // Alpha kind: the alpha determinant path.
    const LimitKernel k2 = LimitKernel::scaled_sine(2);
    CHECK(corr_n(k2, pts) ==
          doctest::Approx(alpha_corr(AlphaParam::process(-0.5), k2, pts)).epsilon(1e-13));
}

TEST_CASE("two-point limit closed form") {
    CHECK(rho2_limit(-0.5, 1e-12) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rho2_limit(-0.5, 1.0) ==
          doctest::Approx(1.0 - 2.0 / (kPi * kPi)).epsilon(1e-13));
    CHECK(rho2_limit(-1.0, 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("three-point limit closed form") {
    CHECK(std::abs(rho3_limit_half(0.3, 0.3, 0.3)) < 1e-13);
    CHECK(rho3_limit_half(0.0, 1000.0, 2000.0) == doctest::Approx(1.0).epsilon(1e-5));
    const LimitKernel k2 = LimitKernel::scaled_sine(2);
    const AlphaParam half = AlphaParam::process(-0.5);
    RngStream rng({5, 0});
    for (int i = 0; i < 100; ++i) {
        const double x1 = -5.0 + 10.0 * rng.next_double();
        const double x2 = -5.0 + 10.0 * rng.next_double();
        const double x3 = -5.0 + 10.0 * rng.next_double();
        CHECK(rho3_limit_half(x1, x2, x3) ==
              doctest::Approx(alpha_corr(half, k2, std::vector<double>{x1, x2, x3}))
                  .epsilon(1e-12));
    }
    CHECK(rho3_limit_half(0.0, 1.0, 2.0) ==
          doctest::Approx(alpha_corr(half, k2, std::vector<double>{0.0, 1.0, 2.0}))
              .epsilon(1e-12));
}

TEST_CASE("structure factor piecewise form") {
    CHECK(structure_factor(-0.5, 0.0) == 0.0);
    CHECK(structure_factor(-0.5, kPi / 2.0) == doctest::Approx(0.5));
    CHECK(structure_factor(-0.5, kPi) == doctest::Approx(1.0));
    CHECK(structure_factor(-0.5, 5.0) == 1.0);
    CHECK(structure_factor(-1.0 / 3.0, 2.0 * kPi / 3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(structure_factor(-0.7, 1.0), std::invalid_argument);
}

TEST_CASE("total correlation limits") {
    CHECK(total_correlation(-0.5, 1e-13) == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(std::abs(total_correlation(-0.5, 1e6)) < 1e-11);
}

TEST_CASE("number variance of the finite process") {
    const BlockSpec gs({{0.0, 1.0}}, 20);
    const double l = 1.0;
    const double var = number_variance_finite(gs, l);
    const double mean = integrate_1d([&](double x) { return density_finite(gs, x); },
                                     -0.5 * l, 0.5 * l);
    CHECK(var > 0.0);
    CHECK(var < mean);

    // Small boxes are Poisson-like: Var ~ K(0,0) L.
    const double tiny = 1e-3;
    CHECK(number_variance_finite(gs, tiny) ==
          doctest::Approx(density_finite(gs, 0.0) * tiny).epsilon(0.01));
}

TEST_CASE("bulk and alpha number variances") {
    // Pure sine kernel reproduces the alpha = -1 formula.
    CHECK(number_variance_bulk(LimitKernel::sine(), 1.0) ==
          doctest::Approx(number_variance_alpha(-1.0, 1.0)).epsilon(1e-10));

    // Oscillatory single block sits between the two limiting curves.
    const double v = number_variance_bulk(LimitKernel::single_block(5.0), 4.0);
    CHECK(v > number_variance_alpha(-1.0, 4.0));
    CHECK(v < number_variance_alpha(-0.5, 4.0));

    // L -> 0 behaves like L + O(L^2).
    const double small = number_variance_alpha(-1.0, 1e-4);
    CHECK(small == doctest::Approx(1e-4).epsilon(1e-3));

    CHECK_THROWS_AS(number_variance_alpha(-1.0, -2.0), std::invalid_argument);
}

TEST_CASE("number variance expansions") {
    CHECK(nv_expansion(-1.0, 0.0, ExpansionRegime::small) == 0.0);
    CHECK(std::abs(nv_expansion(-1.0, 0.2, ExpansionRegime::small) -
                   number_variance_alpha(-1.0, 0.2)) < 1e-5);
    CHECK(std::abs(nv_expansion(-1.0 / 3.0, 200.0, ExpansionRegime::large) -
                   number_variance_alpha(-1.0 / 3.0, 200.0)) <
          2e-3 * number_variance_alpha(-1.0 / 3.0, 200.0));
    const double dm = (std::log(100.0) + std::log(2.0 * kPi) + 1.0 + constants::euler_gamma) /
                      (kPi * kPi);
    CHECK(nv_expansion(-1.0, 100.0, ExpansionRegime::large) ==
          doctest::Approx(dm).epsilon(1e-14));
}

TEST_CASE("alpha = -1/2 slope of the large-L number variance") {
    // Slope in ln L is -1/(alpha pi^2) = 2/pi^2 for alpha = -1/2.
    const double l1 = 50.0, l2 = 200.0;
    const double slope = (number_variance_alpha(-0.5, l2) - number_variance_alpha(-0.5, l1)) /
                         (std::log(l2) - std::log(l1));
    CHECK(slope == doctest::Approx(2.0 / (kPi * kPi)).epsilon(0.02));
}

TEST_CASE("weak convergence gap decreases with a") {
    const BoxN window{{0.0, 1.0}, {0.0, 1.0}};
    const double g10 = weak_convergence_gap(2, LimitKernel::single_block(10.0), -0.5, window);
    const double g100 = weak_convergence_gap(2, LimitKernel::single_block(100.0), -0.5, window);
    CHECK(g100 < g10);
    CHECK_THROWS_AS(weak_convergence_gap(4, LimitKernel::sine(), -0.5, window),
                    std::invalid_argument);
}

TEST_CASE("three-point weak convergence on the unit cube") {
    const BoxN cube{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}};
    const double gap = weak_convergence_gap(3, LimitKernel::single_block(50.0), -0.5, cube);
    CHECK(gap < 0.01);
}

TEST_CASE("cosine cycle limits") {
    const std::vector<int> identity{0, 1, 2};
    CHECK(cos_cycle_limit_check(identity, 17.0) == 0.0);

    const std::vector<int> transposition{1, 0};
    const double omega = 100.0;
    const double expected = 0.5 * std::sin(omega) * std::sin(omega) / (omega * omega);
    CHECK(std::abs(cos_cycle_limit_check(transposition, omega) - expected) < 1e-9);

    const std::vector<int> three_cycle{1, 2, 0};
    CHECK(cos_cycle_limit_check(three_cycle, 200.0) < 1e-3);

    // Longer cycles go through the exact phase expansion.
    const std::vector<int> four_cycle{1, 2, 3, 0};
    CHECK(cos_cycle_limit_check(four_cycle, 300.0) < 1e-3);

    CHECK(cycle_count(std::vector<int>{1, 0, 2}) == 2);
    CHECK_THROWS_AS(cos_cycle_limit_check(std::vector<int>{0, 0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("StatSeries validation") {
    StatSeries s;
    s.x = {0.0, 1.0};
    s.y = {1.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.y = {1.0, 2.0};
    CHECK_NOTHROW(s.validate());
    s.x = {1.0, 1.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("weak convergence gap obeys the cosine-average bound") {
    // The residual oscillatory term integrates to O(1/(2 omega^2)) over the
    // unit window.
    const BoxN window{{0.0, 1.0}, {0.0, 1.0}};
    for (double a : {5.0, 20.0}) {
        const double omega = kPi * (a + 0.5);
        const double gap =
            weak_convergence_gap(2, LimitKernel::single_block(a), -0.5, window);
        CHECK(gap <= 1.0 / (2.0 * omega * omega) + 1e-6);
    }
}
