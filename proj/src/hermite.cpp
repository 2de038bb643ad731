// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockdpp {

namespace {

constexpr double kLog2Psi0Norm = -0.66287403236807968;  // log2((2 pi)^(-1/4))
constexpr double kRescaleLimit = 0x1p500;
constexpr int kRescaleShift = 512;

struct SweepState {
    double prev2 = 0.0;  // psi_{k-2}
    double prev = 0.0;   // psi_{k-1}
    double cur;          // psi_k
    std::int64_t k = 0;
    std::int64_t exponent;

    explicit SweepState(double x) {
        // Seed from log2 psi_0 so the Gaussian factor never underflows.
        const double l2 = kLog2Psi0Norm - x * x / (4.0 * std::numbers::ln2);
        exponent = static_cast<std::int64_t>(std::floor(l2));
        cur = std::exp2(l2 - static_cast<double>(exponent));
    }

    void step(double x) {
        const double next =
            (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
            std::sqrt(static_cast<double>(k + 1));
        prev2 = prev;
        prev = cur;
        cur = next;
        ++k;
        const double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > kRescaleLimit) {
            cur = std::ldexp(cur, -kRescaleShift);
            prev = std::ldexp(prev, -kRescaleShift);
            prev2 = std::ldexp(prev2, -kRescaleShift);
            exponent += kRescaleShift;
        } else if (mag < 1.0 / kRescaleLimit && mag > 0.0) {
            cur = std::ldexp(cur, kRescaleShift);
            prev = std::ldexp(prev, kRescaleShift);
            prev2 = std::ldexp(prev2, kRescaleShift);
            exponent -= kRescaleShift;
        }
    }
};

double materialize(double mantissa, std::int64_t exponent) {
    if (mantissa == 0.0) return 0.0;
    if (exponent < -1200) return 0.0;
    if (exponent > 1200) throw std::overflow_error("hermite: value overflows double");
    return std::ldexp(mantissa, static_cast<int>(exponent));
}

void check_level(std::int64_t k) {
    if (k < 0) throw std::invalid_argument("hermite: level must be >= 0");
    if (k > 1000000) throw std::invalid_argument("hermite: level above documented range 1e6");
}

}  // namespace

double psi(std::int64_t k, double x) {
    check_level(k);
    if (!std::isfinite(x)) throw std::invalid_argument("psi: x must be finite");
    SweepState s(x);
    while (s.k < k) s.step(x);
    return materialize(s.cur, s.exponent);
}

double psi_prime(std::int64_t k, double x) {
    check_level(k);
    if (!std::isfinite(x)) throw std::invalid_argument("psi_prime: x must be finite");
    SweepState s(x);
    while (s.k < k) s.step(x);
    const double m = std::sqrt(static_cast<double>(k)) * s.prev - 0.5 * x * s.cur;
    return materialize(m, s.exponent);
}

std::vector<ScaledValue> hermite_scaled_sweep(std::int64_t kmax, double x) {
    check_level(kmax);
    if (!std::isfinite(x)) throw std::invalid_argument("hermite_scaled_sweep: x must be finite");
    std::vector<ScaledValue> out;
    out.reserve(static_cast<std::size_t>(kmax) + 1);
    SweepState s(x);
    out.push_back({s.cur, s.exponent});
    while (s.k < kmax) {
        s.step(x);
        out.push_back({s.cur, s.exponent});
    }
    return out;
}

std::vector<CdTriple> hermite_cd_triples(std::span<const std::int64_t> levels, double x) {
    std::vector<CdTriple> out;
    out.reserve(levels.size());
    if (levels.empty()) return out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        check_level(levels[i]);
        if (i > 0 && levels[i] < levels[i - 1])
            throw std::invalid_argument("hermite_cd_triples: levels must be sorted");
    }
    if (!std::isfinite(x)) throw std::invalid_argument("hermite_cd_triples: x must be finite");

    SweepState s(x);
    for (std::int64_t level : levels) {
        while (s.k < level) s.step(x);
        if (level == 0) {
            out.push_back(CdTriple{});  // kernel_cd(0, ., .) = 0
        } else {
            out.push_back(CdTriple{s.prev2, s.prev, s.cur, s.exponent});
        }
    }
    return out;
}

}  // namespace blockdpp
