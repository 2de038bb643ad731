// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockdpp {

namespace {

double scaled_product(double mx, std::int64_t ex, double my, std::int64_t ey) {
    const std::int64_t e = ex + ey;
    if (e < -1400) return 0.0;
    return std::ldexp(mx * my, static_cast<int>(e));
}

// sqrt(n) (psi_n(x) psi_{n-1}(y) - psi_{n-1}(x) psi_n(y)) / (x - y) from triples.
double cd_from_triples(std::int64_t n, const CdTriple& tx, const CdTriple& ty,
                       double x, double y) {
    if (n == 0) return 0.0;
    const double root_n = std::sqrt(static_cast<double>(n));
    if (std::abs(x - y) < kCdDiagonalRadius) {
        // Derivative form at x; the x-dependent halves of psi' cancel exactly,
        // leaving n psi_{n-1}^2 - sqrt(n(n-1)) psi_{n-2} psi_n.
        const double m = root_n * (root_n * tx.below1 * tx.below1 -
                                   std::sqrt(static_cast<double>(n - 1)) * tx.below2 * tx.at);
        const std::int64_t e = 2 * tx.exponent;
        if (e < -1400) return 0.0;
        return std::ldexp(m, static_cast<int>(e));
    }
    const double cross = scaled_product(tx.at, tx.exponent, ty.below1, ty.exponent) -
                         scaled_product(tx.below1, tx.exponent, ty.at, ty.exponent);
    return root_n * cross / (x - y);
}

}  // namespace

double kernel_direct(std::span<const std::int64_t> levels, double x, double y) {
    if (levels.empty()) throw std::invalid_argument("kernel_direct: empty level set");
    const std::int64_t kmax = *std::max_element(levels.begin(), levels.end());
    const std::vector<ScaledValue> px = hermite_scaled_sweep(kmax, x);
    const std::vector<ScaledValue> py = hermite_scaled_sweep(kmax, y);
    double sum = 0.0;
    for (std::int64_t k : levels) {
        if (k < 0) throw std::invalid_argument("kernel_direct: bad level");
        const auto& a = px[static_cast<std::size_t>(k)];
        const auto& b = py[static_cast<std::size_t>(k)];
        sum += scaled_product(a.mantissa, a.exponent, b.mantissa, b.exponent);
    }
    return sum;
}

double kernel_cd(std::int64_t n, double x, double y) {
    if (n < 0) throw std::invalid_argument("kernel_cd: n must be >= 0");
    if (n == 0) return 0.0;
    const std::int64_t lv[] = {n};
    const auto tx = hermite_cd_triples(lv, x);
    const auto ty = hermite_cd_triples(lv, y);
    return cd_from_triples(n, tx[0], ty[0], x, y);
}

std::vector<CdTriple> block_features(const BlockSpec& spec, double x) {
    std::vector<std::int64_t> levels;
    levels.reserve(2 * spec.boundaries().size());
    for (const auto& [lo, hi] : spec.boundaries()) {
        levels.push_back(lo);
        levels.push_back(hi);
    }
    return hermite_cd_triples(levels, x);
}

double kernel_block(const BlockSpec& spec, std::span<const CdTriple> fx,
                    std::span<const CdTriple> fy, double x, double y) {
    const auto& bounds = spec.boundaries();
    if (fx.size() != 2 * bounds.size() || fy.size() != 2 * bounds.size())
        throw std::invalid_argument("kernel_block: feature size mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < bounds.size(); ++j) {
        sum += cd_from_triples(bounds[j].second, fx[2 * j + 1], fy[2 * j + 1], x, y);
        sum -= cd_from_triples(bounds[j].first, fx[2 * j], fy[2 * j], x, y);
    }
    return sum;
}

double kernel_block(const BlockSpec& spec, double x, double y) {
    return kernel_block(spec, block_features(spec, x), block_features(spec, y), x, y);
}

double density_finite(const BlockSpec& spec, double x) {
    return kernel_block(spec, x, x);
}

}  // namespace blockdpp
