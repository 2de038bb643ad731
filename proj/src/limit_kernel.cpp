// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/limit_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blockdpp/airy.hpp"

namespace blockdpp {

namespace {
constexpr double kPi = std::numbers::pi;
}

double sinc(double z) {
    if (std::abs(z) < 1e-8) return 1.0;
    return std::sin(z) / z;
}

double LimitKernel::operator()(double s) const { return bulk_kernel(*this, s); }

LimitKernel LimitKernel::sine() {
    return {LimitKernelKind::pure_sine, -1.0, kPi, {}};
}

LimitKernel LimitKernel::single_block(double a, double w) {
    if (!(a >= 0.0) || !(w > 0.0))
        throw std::invalid_argument("single_block: requires a >= 0, w > 0");
    return {LimitKernelKind::single_block, -0.5, kPi / 2.0,
            {kPi * (2.0 * a + w) / (2.0 * w)}};
}

LimitKernel LimitKernel::even_type(const std::vector<double>& a_list, double w) {
    if (a_list.empty() || !(w > 0.0))
        throw std::invalid_argument("even_type: requires blocks and w > 0");
    const double b = static_cast<double>(a_list.size());
    std::vector<double> freq;
    freq.reserve(a_list.size());
    for (double a : a_list) {
        if (!(a > 0.0)) throw std::invalid_argument("even_type: requires a_j > 0");
        freq.push_back(kPi * (2.0 * a + w) / (2.0 * w * b));
    }
    return {LimitKernelKind::even_type, -1.0 / (2.0 * b), kPi / (2.0 * b), freq};
}

LimitKernel LimitKernel::odd_type(const std::vector<double>& a_list, double w) {
    // a_list holds a_1..a_{B-1}; the half-width block at the origin is implied.
    if (!(w > 0.0)) throw std::invalid_argument("odd_type: requires w > 0");
    const double b = static_cast<double>(a_list.size()) + 1.0;
    std::vector<double> freq;
    freq.reserve(a_list.size());
    for (double a : a_list) {
        if (!(a > 0.0)) throw std::invalid_argument("odd_type: requires a_j > 0");
        freq.push_back(kPi * (2.0 * a + w) / (2.0 * w * (b - 0.5)));
    }
    return {LimitKernelKind::odd_type, -1.0 / (2.0 * b - 1.0), kPi / (2.0 * b - 1.0), freq};
}

LimitKernel LimitKernel::scaled_sine(int m) {
    if (m < 1) throw std::invalid_argument("scaled_sine: m must be >= 1");
    return {LimitKernelKind::scaled_sine, -1.0 / m, kPi / m, {}};
}

LimitKernel LimitKernel::cusp(double a, double b) {
    return {LimitKernelKind::cusp, -0.5, kPi / 2.0, {cusp_omega(a, b)}};
}

double bulk_kernel(const LimitKernel& kernel, double s) {
    switch (kernel.kind) {
        case LimitKernelKind::pure_sine:
        case LimitKernelKind::scaled_sine:
            return sinc(kernel.sinc_scale * s);
        case LimitKernelKind::single_block:
        case LimitKernelKind::cusp:
            return sinc(kernel.sinc_scale * s) * std::cos(kernel.frequencies[0] * s);
        case LimitKernelKind::even_type: {
            double sum = 0.0;
            for (double w : kernel.frequencies) sum += std::cos(w * s);
            return sinc(kernel.sinc_scale * s) * sum /
                   static_cast<double>(kernel.frequencies.size());
        }
        case LimitKernelKind::odd_type: {
            double sum = 0.5;
            for (double w : kernel.frequencies) sum += std::cos(w * s);
            return sinc(kernel.sinc_scale * s) * sum /
                   (static_cast<double>(kernel.frequencies.size()) + 0.5);
        }
    }
    throw std::logic_error("bulk_kernel: unknown kind");
}

LimitKernel limit_kernel_for(const BlockSpec& spec) {
    const auto& blocks = spec.blocks();
    if (blocks.size() == 1) {
        if (blocks[0].a == 0.0) return LimitKernel::sine();
        return LimitKernel::single_block(blocks[0].a, blocks[0].w);
    }
    std::vector<double> a_list;
    if (spec.parity() == Parity::odd) {
        for (std::size_t j = 1; j < blocks.size(); ++j) a_list.push_back(blocks[j].a);
        return LimitKernel::odd_type(a_list, blocks[1].w);
    }
    if (spec.parity() == Parity::even) {
        for (const Block& blk : blocks) a_list.push_back(blk.a);
        return LimitKernel::even_type(a_list, blocks[0].w);
    }
    throw std::invalid_argument("limit_kernel_for: custom multi-block specs have no named limit kernel");
}

double cusp_omega(double a, double b) {
    if (!(a > 0.0)) throw std::invalid_argument("cusp_omega: requires a > 0");
    if (!(b >= 0.0 && b <= a)) throw std::invalid_argument("cusp_omega: requires 0 <= b <= a");
    const double outer = std::sqrt((a + 1.0) * (a + 1.0) - b * b);
    const double inner = std::sqrt(a * a - b * b);
    return 0.5 * kPi * (outer + inner) / (outer - inner);
}

double cusp_kernel(double a, double b, double s) {
    if (!(a > 0.0)) throw std::invalid_argument("cusp_kernel: requires a > 0");
    if (b >= a + 1.0 || b < 0.0)
        throw std::domain_error("cusp_kernel: bulk point outside the support");
    if (b > a) return sinc(kPi * s);  // between cusp and edge: the sine kernel
    return sinc(0.5 * kPi * s) * std::cos(cusp_omega(a, b) * s);
}

double crossover_c(double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("crossover_c: requires tau >= 0");
    const double q = std::sqrt(tau / (1.0 + tau));
    return (1.0 + q) / (1.0 - q);
}

double edge_eta(double a) {
    return std::cbrt(a + 1.0) / std::pow(2.0 * a + 1.0, 1.0 / 6.0);
}

CuspParams CuspParams::from_b(double a, double b) {
    // Invert b^2 = a^2 - 2 tau a.
    const double tau = (a * a - b * b) / (2.0 * a);
    return {a, b, tau, crossover_c(tau), edge_eta(a)};
}

CuspParams CuspParams::from_tau(double a, double tau) {
    const double b2 = a * a - 2.0 * tau * a;
    if (b2 < 0.0) throw std::invalid_argument("CuspParams: tau too large for this a");
    return {a, std::sqrt(b2), tau, crossover_c(tau), edge_eta(a)};
}

double edge_kernel(double a, double x, double y) {
    const double eta = edge_eta(a);
    if (std::abs(x - y) < 1e-6) {
        const AiryValue v = airy(eta * x);
        return eta * (v.ai_prime * v.ai_prime - eta * x * v.ai * v.ai);
    }
    const AiryValue vx = airy(eta * x);
    const AiryValue vy = airy(eta * y);
    return (vx.ai * vy.ai_prime - vx.ai_prime * vy.ai) / (x - y);
}

double circular_kernel(std::int64_t n, double z) {
    if (n < 1) throw std::invalid_argument("circular_kernel: n must be >= 1");
    const double half = 0.5 * z;
    const double denom = std::sin(half);
    if (std::abs(denom) < 1e-9)
        return static_cast<double>(n) / (2.0 * kPi) * std::cos(static_cast<double>(n) * half) /
               std::cos(half);
    return std::sin(static_cast<double>(n) * half) / (2.0 * kPi * denom);
}

double semicircle_density(std::int64_t n, double x) {
    const double arg = 4.0 * static_cast<double>(n) - x * x;
    return arg > 0.0 ? std::sqrt(arg) / (2.0 * kPi) : 0.0;
}

double blocks_density(const BlockSpec& spec, double x) {
    const double m = static_cast<double>(spec.m());
    double sum = 0.0;
    for (const Block& b : spec.blocks()) {
        const double outer = 4.0 * (b.a + b.w) * (b.a + b.w) * m - x * x;
        const double inner = 4.0 * b.a * b.a * m - x * x;
        if (outer > 0.0) sum += std::sqrt(outer);
        if (inner > 0.0) sum -= std::sqrt(inner);
    }
    return sum / (2.0 * kPi);
}

double annulus_projection_density(const BlockSpec& spec, double x) {
    // Lebesgue measure in p of {a^2 M < p^2 + x^2/4 < (a+w)^2 M}, over pi.
    const double m = static_cast<double>(spec.m());
    double measure = 0.0;
    for (const Block& b : spec.blocks()) {
        const double outer = (b.a + b.w) * (b.a + b.w) * m - 0.25 * x * x;
        const double inner = b.a * b.a * m - 0.25 * x * x;
        if (outer > 0.0) measure += 2.0 * std::sqrt(outer);
        if (inner > 0.0) measure -= 2.0 * std::sqrt(inner);
    }
    return measure / (2.0 * kPi);
}

double arcsine_density(double a, std::int64_t m, double x) {
    const double edge = 2.0 * a * std::sqrt(static_cast<double>(m));
    if (!(std::abs(x) < edge)) return 0.0;
    return (2.0 * a + 1.0) * static_cast<double>(m) /
           (kPi * std::sqrt(4.0 * a * a * static_cast<double>(m) - x * x));
}

double cumulative_arcsine(double a, std::int64_t m, double x) {
    const double n = (2.0 * a + 1.0) * static_cast<double>(m);
    const double edge = 2.0 * a * std::sqrt(static_cast<double>(m));
    const double u = std::clamp(x / edge, -1.0, 1.0);
    return std::clamp(n / kPi * (0.5 * kPi + std::asin(u)), 0.0, n);
}

}  // namespace blockdpp
