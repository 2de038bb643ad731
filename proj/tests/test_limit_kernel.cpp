// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blockdpp/kernel.hpp"
#include "blockdpp/limit_kernel.hpp"
#include "blockdpp/quadrature.hpp"
#include "blockdpp/sampler.hpp"
#include "oracle_helpers.hpp"

using namespace blockdpp;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("semicircle density") {
    CHECK(semicircle_density(100, 20.0) == 0.0);
    CHECK(semicircle_density(100, -20.0) == 0.0);
    CHECK(semicircle_density(100, 0.0) == doctest::Approx(20.0 / (2.0 * kPi)).epsilon(1e-14));
    const QuadratureSpec quad{1e-9, 1e-9, 60000, 16};
    const double mass = integrate_1d([](double x) { return semicircle_density(49, x); },
                                     -14.0, 14.0, quad);
    CHECK(mass == doctest::Approx(49.0).epsilon(1e-7));
}

TEST_CASE("blocks density reductions and identities") {
    const BlockSpec gs({{0.0, 1.0}}, 64);
    for (double x : {-10.0, -3.0, 0.0, 7.5})
        CHECK(blocks_density(gs, x) == doctest::Approx(semicircle_density(64, x)).epsilon(1e-14));

    const BlockSpec blk({{1.0, 1.0}}, 32);
    CHECK(blocks_density(blk, 0.0) == doctest::Approx(std::sqrt(32.0) / kPi).epsilon(1e-13));

    // Same curve through the phase-space annulus projection.
    const BlockSpec two({{0.0, 0.5}, {2.0, 1.0}}, 8, Parity::odd);
    for (double x = -22.0; x <= 22.0; x += 0.37)
        CHECK(annulus_projection_density(two, x) ==
              doctest::Approx(blocks_density(two, x)).epsilon(1e-13));
}

TEST_CASE("arcsine density and its cumulative") {
    const double a = 1.0;
    const std::int64_t m = 4;
    CHECK(arcsine_density(a, m, 0.0) == doctest::Approx(3.0 / kPi).epsilon(1e-14));
    CHECK(arcsine_density(a, m, 4.1) == 0.0);  // outside |x| < 2 a sqrt(M) = 4

    // Integrable endpoint divergence, total mass (2a+1) M = N. The endpoint
    // neighbourhoods are handled via the closed-form cumulative; the bulk is
    // quadrature.
    const QuadratureSpec quad{1e-8, 1e-8, 60000, 16};
    const double delta = 1e-6;
    const double mass = integrate_1d([&](double x) { return arcsine_density(a, m, x); },
                                     -4.0 + delta, 4.0 - delta, quad);
    const double tails = 2.0 * (cumulative_arcsine(a, m, 4.0) -
                                cumulative_arcsine(a, m, 4.0 - delta));
    CHECK(mass + tails == doctest::Approx(12.0).epsilon(1e-6));
    CHECK(cumulative_arcsine(a, m, 4.0) == doctest::Approx(12.0).epsilon(1e-14));

    CHECK(cumulative_arcsine(a, m, 0.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(cumulative_arcsine(a, m, 4.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(cumulative_arcsine(a, m, -4.0) == 0.0);
    for (double x : {-3.0, -1.2, 0.4, 2.9}) {
        const double fd = oracle::central_diff(
            [&](double t) { return cumulative_arcsine(a, m, t); }, x, 1e-4);
        CHECK(std::abs(fd - arcsine_density(a, m, x)) < 1e-6);
    }
}

TEST_CASE("bulk kernel closed forms") {
    CHECK(bulk_kernel(LimitKernel::sine(), 0.0) == 1.0);
    CHECK(bulk_kernel(LimitKernel::single_block(7.0), 0.0) == 1.0);
    CHECK(bulk_kernel(LimitKernel::even_type({2.0, 4.0}, 1.0), 0.0) == 1.0);
    CHECK(bulk_kernel(LimitKernel::odd_type({3.0}, 2.0), 0.0) == 1.0);
    CHECK(bulk_kernel(LimitKernel::scaled_sine(4), 0.0) == 1.0);

    // a = 0 is the sine kernel.
    const LimitKernel a0 = LimitKernel::single_block(0.0);
    for (double s : {0.3, 1.0, 2.7})
        CHECK(a0(s) == doctest::Approx(std::sin(kPi * s) / (kPi * s)).epsilon(1e-14));

    // a = 2, s = 1: cos(5 pi / 2) = 0.
    CHECK(std::abs(bulk_kernel(LimitKernel::single_block(2.0), 1.0)) < 1e-15);

    // Even type with B = 1 reduces to the single block.
    const LimitKernel even1 = LimitKernel::even_type({3.5}, 1.0);
    const LimitKernel single = LimitKernel::single_block(3.5);
    for (double s = -6.0; s <= 6.0; s += 0.1)
        CHECK(even1(s) == doctest::Approx(single(s)).epsilon(1e-15));
}

TEST_CASE("limit kernels stay within [-1, 1]") {
    const std::vector<LimitKernel> kernels = {
        LimitKernel::sine(), LimitKernel::single_block(4.0),
        LimitKernel::even_type({1.0, 6.0, 9.0}, 1.0), LimitKernel::odd_type({2.0, 5.0}, 1.0),
        LimitKernel::scaled_sine(2), LimitKernel::cusp(3.0, 1.0)};
    for (const LimitKernel& k : kernels)
        for (double s = 0.0; s <= 30.0; s += 0.01) CHECK(std::abs(k(s)) <= 1.0 + 1e-15);
}

TEST_CASE("limit kernel of a block spec") {
    CHECK(limit_kernel_for(BlockSpec({{0.0, 1.0}}, 10)).kind == LimitKernelKind::pure_sine);
    CHECK(limit_kernel_for(BlockSpec({{2.0, 1.0}}, 10)).kind == LimitKernelKind::single_block);
    const LimitKernel even =
        limit_kernel_for(BlockSpec({{1.0, 1.0}, {3.0, 1.0}}, 10, Parity::even));
    CHECK(even.kind == LimitKernelKind::even_type);
    CHECK(even.alpha == doctest::Approx(-0.25));
    const LimitKernel odd =
        limit_kernel_for(BlockSpec({{0.0, 0.5}, {2.0, 1.0}}, 16, Parity::odd));
    CHECK(odd.kind == LimitKernelKind::odd_type);
    CHECK(odd.alpha == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("cusp kernel branches") {
    // At the cusp the kernel is the sine kernel.
    CHECK(cusp_omega(3.0, 3.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    for (double s : {0.4, 1.3, 3.3})
        CHECK(cusp_kernel(3.0, 3.0, s) ==
              doctest::Approx(std::sin(kPi * s) / (kPi * s)).epsilon(1e-12));

    // Between cusp and edge: the sine kernel branch.
    CHECK(cusp_kernel(3.0, 3.5, 1.1) ==
          doctest::Approx(std::sin(1.1 * kPi) / (1.1 * kPi)).epsilon(1e-14));

    // omega(b) decreases to pi/2 and grows towards the bulk value at b = 0.
    CHECK(cusp_omega(5.0, 0.0) == doctest::Approx(kPi * (5.0 + 0.5)).epsilon(1e-13));
    double prev = cusp_omega(5.0, 0.0);
    for (double b = 0.5; b <= 5.0; b += 0.5) {
        const double w = cusp_omega(5.0, b);
        CHECK(w >= kPi / 2.0 - 1e-12);
        CHECK(w < prev);
        prev = w;
    }

    CHECK_THROWS_AS(cusp_kernel(3.0, 4.2, 1.0), std::domain_error);
    CHECK_THROWS_AS(cusp_kernel(3.0, -0.1, 1.0), std::domain_error);
}

TEST_CASE("crossover constant and edge scaling") {
    CHECK(crossover_c(0.0) == doctest::Approx(1.0));
    CHECK(edge_eta(0.0) == 1.0);

    // omega -> c pi/2 along b^2 = a^2 - 2 tau a as a grows.
    const double tau = 1.5;
    const double c = crossover_c(tau);
    for (double a : {50.0, 500.0, 5000.0}) {
        const CuspParams p = CuspParams::from_tau(a, tau);
        const double ratio = cusp_omega(a, p.b) / (c * kPi / 2.0);
        CHECK(std::abs(ratio - 1.0) < 10.0 / a);
    }
    const CuspParams q = CuspParams::from_b(4.0, 2.0);
    CHECK(q.tau == doctest::Approx((16.0 - 4.0) / 8.0));
    CHECK(q.eta == doctest::Approx(edge_eta(4.0)));
}

TEST_CASE("edge kernel values and symmetry") {
    // a = 0 diagonal at the origin: Ai'(0)^2.
    CHECK(edge_kernel(0.0, 0.0, 0.0) == doctest::Approx(0.066987483779664).epsilon(1e-10));
    for (double a : {0.0, 2.0}) {
        CHECK(edge_kernel(a, -1.3, 0.7) ==
              doctest::Approx(edge_kernel(a, 0.7, -1.3)).epsilon(1e-12));
        const double diag = edge_kernel(a, -0.4, -0.4);
        CHECK(std::abs(edge_kernel(a, -0.4 + 1e-5, -0.4 - 1e-5) - diag) < 1e-5);
    }
}

TEST_CASE("circular kernel") {
    CHECK(circular_kernel(5, 0.0) == doctest::Approx(5.0 / (2.0 * kPi)).epsilon(1e-14));
    for (double z : {0.3, 1.0, 2.9})
        CHECK(circular_kernel(1, z) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));
    // Reproducing property: the squared kernel integrates back to S_n(0).
    for (std::int64_t n : {2LL, 9LL}) {
        const double sq = integrate_1d(
            [&](double z) {
                const double s = circular_kernel(n, z);
                return s * s;
            },
            0.0, 2.0 * kPi);
        CHECK(sq == doctest::Approx(circular_kernel(n, 0.0)).epsilon(1e-10));
    }
}

TEST_CASE("multi-block bulk kernels match the rescaled finite kernels") {
    // Even type with two blocks.
    {
        const BlockSpec spec({{2.0, 1.0}, {5.0, 1.0}}, 100, Parity::even);
        const double rho0 = density_finite(spec, 0.0);
        const LimitKernel limit = LimitKernel::even_type({2.0, 5.0}, 1.0);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double s = 4.0 * i / 200;
            const double finite = kernel_block(spec, 0.5 * s / rho0, -0.5 * s / rho0) / rho0;
            sup = std::max(sup, std::abs(finite - limit(s)));
        }
        CHECK(sup < 0.005);
        // rho_1(0) approaches R sqrt(M) / pi.
        CHECK(rho0 == doctest::Approx(2.0 * 10.0 / std::numbers::pi).epsilon(0.01));
    }
    // Odd type: half-width block at the origin plus one outer block.
    {
        const BlockSpec spec({{0.0, 0.5}, {3.0, 1.0}}, 100, Parity::odd);
        const double rho0 = density_finite(spec, 0.0);
        const LimitKernel limit = LimitKernel::odd_type({3.0}, 1.0);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double s = 4.0 * i / 200;
            const double finite = kernel_block(spec, 0.5 * s / rho0, -0.5 * s / rho0) / rho0;
            sup = std::max(sup, std::abs(finite - limit(s)));
        }
        CHECK(sup < 0.03);
        CHECK(rho0 == doctest::Approx(1.5 * 10.0 / std::numbers::pi).epsilon(0.01));
    }
}
