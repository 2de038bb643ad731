// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blockdpp/kernel.hpp"
#include "blockdpp/quadrature.hpp"
#include "blockdpp/sampler.hpp"
#include "blockdpp/limit_kernel.hpp"
#include "blockdpp/stats.hpp"

using namespace blockdpp;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("rng streams are deterministic and decorrelated") {
    RngStream a({1, 2}), b({1, 2}), c({1, 3});
    for (int i = 0; i < 5; ++i) {
        const std::uint64_t va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64());
    }
    RngStream u({9, 9});
    for (int i = 0; i < 1000; ++i) {
        const double x = u.next_double();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("identical contracts give bit-identical samples") {
    const BlockSpec gs({{0.0, 1.0}}, 8);
    const DppSampler sampler(HermiteBasis{gs});
    const PointSample s1 = sampler.sample({77, 3});
    const PointSample s2 = sampler.sample({77, 3});
    const PointSample s3 = sampler.sample({77, 4});
    CHECK(s1.positions == s2.positions);
    CHECK(s1.positions != s3.positions);
    CHECK(s1.n() == 8);
    CHECK(std::is_sorted(s1.positions.begin(), s1.positions.end()));
}

TEST_CASE("single-level sampler reproduces the ground-state Gaussian") {
    const BlockSpec one({{0.0, 1.0}}, 1);
    const DppSampler sampler(HermiteBasis{one});
    double sum = 0.0, sumsq = 0.0;
    const int n = 30000;
    for (int r = 0; r < n; ++r) {
        const PointSample s = sampler.sample({123, static_cast<std::uint64_t>(r)});
        REQUIRE(s.n() == 1);
        sum += s.positions[0];
        sumsq += s.positions[0] * s.positions[0];
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    // psi_0^2 is a standard normal: variance 1 within 3 standard errors.
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("fermionic exclusion keeps points apart") {
    const BlockSpec two({{0.0, 1.0}}, 2);
    const DppSampler sampler(HermiteBasis{two});
    double min_gap = 1e9;
    for (int r = 0; r < 2000; ++r) {
        const PointSample s = sampler.sample({55, static_cast<std::uint64_t>(r)});
        REQUIRE(s.n() == 2);
        min_gap = std::min(min_gap, s.positions[1] - s.positions[0]);
    }
    CHECK(min_gap > 0.0);
}

TEST_CASE("fourier sampler has flat density") {
    const DppSampler cue(FourierBasis{8});
    const auto samples = sample_replicates(cue, {2024, 0}, 3000, 1);
    const StatSeries d = estimate_density(samples, 0.0, kTwoPi, 16);
    const double flat = 8.0 / kTwoPi;
    for (std::size_t b = 0; b < d.y.size(); ++b)
        CHECK(std::abs(d.y[b] - flat) < 4.0 * d.yerr[b] + 1e-12);
}

TEST_CASE("power map wraps, sorts, and preserves cardinality") {
    PointSample s;
    s.domain = SampleDomain::circle;
    s.positions = {0.5, 2.0, 5.0};
    const PointSample same = power_map(s, 1);
    CHECK(same.positions == s.positions);
    const PointSample mapped = power_map(s, 3);
    CHECK(mapped.n() == 3);
    for (double p : mapped.positions) {
        CHECK(p >= 0.0);
        CHECK(p < kTwoPi);
    }
    CHECK(std::is_sorted(mapped.positions.begin(), mapped.positions.end()));

    PointSample line;
    line.domain = SampleDomain::line;
    line.positions = {0.0};
    CHECK_THROWS_AS(power_map(line, 2), std::domain_error);
}

TEST_CASE("superposition stitches independent copies") {
    const DppSampler cue(FourierBasis{4});
    const PointSample u = sample_superposition(3, cue, {31, 5});
    CHECK(u.n() == 12);
    CHECK(std::is_sorted(u.positions.begin(), u.positions.end()));
    const PointSample again = sample_superposition(3, cue, {31, 5});
    CHECK(u.positions == again.positions);
}

TEST_CASE("replicate runner is thread-count invariant") {
    const DppSampler cue(FourierBasis{6});
    const auto one = sample_replicates(cue, {8, 0}, 50, 1);
    const auto four = sample_replicates(cue, {8, 0}, 50, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].positions == four[i].positions);
}

TEST_CASE("density estimator matches the kernel diagonal") {
    const BlockSpec gs({{0.0, 1.0}}, 5);
    const DppSampler sampler(HermiteBasis{gs});
    const auto samples = sample_replicates(sampler, {321, 0}, 4000, 1);
    const StatSeries d = estimate_density(samples, -5.0, 5.0, 20);
    for (std::size_t b = 0; b < d.x.size(); ++b) {
        const double expected = density_finite(gs, d.x[b]);
        CHECK(std::abs(d.y[b] - expected) < 4.0 * d.yerr[b] + 0.01);
    }
}

TEST_CASE("number variance estimator sees Poisson statistics in a control") {
    // Synthetic control: Poisson(lambda) many uniform points on [-W/2, W/2].
    RngStream rng({60, 1});
    const double w = 40.0, lambda = 30.0;
    std::vector<PointSample> samples(3000);
    for (PointSample& s : samples) {
        // Inversion by products of uniforms.
        const double target = std::exp(-lambda);
        double prod = rng.next_double();
        int count = 0;
        while (prod > target) {
            prod *= rng.next_double();
            ++count;
        }
        s.domain = SampleDomain::line;
        s.positions.resize(static_cast<std::size_t>(count));
        for (double& p : s.positions) p = w * (rng.next_double() - 0.5);
        std::sort(s.positions.begin(), s.positions.end());
    }
    const std::vector<double> boxes{2.0, 5.0};
    const StatSeries nv = estimate_number_variance(samples, boxes);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const double expected = lambda * boxes[i] / w;  // Poisson: Var = mean
        CHECK(std::abs(nv.y[i] - expected) < 4.0 * nv.yerr[i]);
    }
}

TEST_CASE("estimator input validation") {
    CHECK_THROWS_AS(estimate_density({}, 0.0, 1.0, 4), std::invalid_argument);
    std::vector<PointSample> lonely(5);
    for (auto& s : lonely) s.positions = {0.1};
    CHECK_THROWS_AS(estimate_pair_correlation(lonely, 1.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("desk-scale cap on the level count") {
    CHECK_THROWS_AS(DppSampler(HermiteBasis{BlockSpec({{0.0, 1.0}}, 201)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DppSampler(FourierBasis{0}), std::invalid_argument);
}

TEST_CASE("superposition with one copy is a plain draw") {
    const DppSampler cue(FourierBasis{5});
    CHECK(sample_superposition(1, cue, {3, 9}).positions == cue.sample({3, 9}).positions);
}

TEST_CASE("excited-block density shows the two-lobed annulus shape") {
    const BlockSpec spec({{2.0, 1.0}}, 10);
    const DppSampler sampler(HermiteBasis{spec});
    const auto samples = sample_replicates(sampler, {1717, 0}, 1500, 1);
    const StatSeries d = estimate_density(samples, -14.0, 14.0, 28);
    double worst = 0.0;
    for (std::size_t b = 0; b < d.x.size(); ++b) {
        const double expected = density_finite(spec, d.x[b]);
        worst = std::max(worst, std::abs(d.y[b] - expected) - 4.0 * d.yerr[b]);
    }
    CHECK(worst <= 0.02);
    // Density dips between the inner edges (annulus projection pattern).
    const double center = density_finite(spec, 0.0);
    const double lobe = density_finite(spec, 11.0);
    CHECK(center < lobe);
    auto estimate_at = [&](double x) {
        const std::size_t b = static_cast<std::size_t>((x + 14.0) / 28.0 * 28);
        return d.y[b];
    };
    CHECK(estimate_at(0.0) < estimate_at(11.0));
}

TEST_CASE("bulk pair correlation of the ground state matches the sine kernel") {
    const BlockSpec gs({{0.0, 1.0}}, 40);
    const DppSampler sampler(HermiteBasis{gs});
    const auto samples = sample_replicates(sampler, {808, 0}, 3000, 1);
    const StatSeries pc = estimate_pair_correlation(samples, 2.0, 3.0, 12);
    for (std::size_t b = 1; b < pc.x.size(); ++b) {
        const double s = pc.x[b];
        const double k = sinc(std::numbers::pi * s);
        const double predicted = 1.0 - k * k;
        CHECK(std::abs(pc.y[b] - predicted) < 4.0 * pc.yerr[b] + 0.03);
    }
}

TEST_CASE("union of three circular processes reproduces the alpha = -1/3 variance") {
    const std::int64_t n = 8;
    const int m = 3;
    const DppSampler cue(FourierBasis{n});
    const auto samples = sample_replicates(cue, {2718, 0}, 4000, 1, m);
    const double density = static_cast<double>(m * n) / kTwoPi;

    std::vector<double> boxes;
    for (double l : {1.0, 2.0, 4.0}) boxes.push_back(l / density);  // physical arcs
    const StatSeries nv = estimate_number_variance(samples, boxes);

    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const double l = boxes[i] * density;
        // Exact finite-n value: m independent copies with kernel S_n.
        const double arc = boxes[i];
        const double mean = arc * static_cast<double>(n) / kTwoPi;
        const double overlap = integrate_1d(
            [&](double u) {
                const double s = circular_kernel(n, u);
                return 2.0 * (arc - u) * s * s;
            },
            0.0, arc);
        const double exact = m * (mean - overlap);
        CHECK(std::abs(nv.y[i] - exact) < 3.0 * nv.yerr[i]);
        // And the finite-n value is already close to the alpha limit curve.
        CHECK(std::abs(exact - number_variance_alpha(-1.0 / m, l)) < 0.03);
    }
}

TEST_CASE("counting variance of the ground state matches the kernel formula") {
    const BlockSpec gs({{0.0, 1.0}}, 40);
    const DppSampler sampler(HermiteBasis{gs});
    const auto samples = sample_replicates(sampler, {515, 0}, 3000, 1);
    const double rho0 = density_finite(gs, 0.0);
    const double l = 2.0;
    const std::vector<double> boxes{l / rho0};
    const StatSeries nv = estimate_number_variance(samples, boxes);
    const double exact = number_variance_finite(gs, l / rho0);
    CHECK(std::abs(nv.y[0] - exact) < 3.0 * nv.yerr[0]);
    // The rescaled box sits near the alpha = -1 bulk curve.
    CHECK(std::abs(exact - number_variance_alpha(-1.0, l)) < 0.05);
}
