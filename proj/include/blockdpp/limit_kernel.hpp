// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "blockdpp/block_spec.hpp"

namespace blockdpp {

/// sin(z)/z with the analytic limit at z = 0.
double sinc(double z);

enum class LimitKernelKind {
    pure_sine,     // sin(pi s) / (pi s)
    single_block,  // sinc(pi s / 2) cos(omega s)
    even_type,     // sinc(pi s / 2B) * mean of B cosines
    odd_type,      // sinc(pi s / (2B-1)) * (1/2 + sum of B-1 cosines) / (B - 1/2)
    cusp,          // sinc(pi s / 2) cos(omega(b) s)
    scaled_sine,   // sin(pi |alpha| s) / (pi |alpha| s)
};

/// Translation-invariant M -> infinity kernel, normalized so k(0) = 1.
/// `alpha` is the -1/m parameter of the associated limit process and
/// `sinc_scale` is the matching pi |alpha| factor.
struct LimitKernel {
    LimitKernelKind kind;
    double alpha;
    double sinc_scale;
    std::vector<double> frequencies;

    double operator()(double s) const;

    static LimitKernel sine();
    static LimitKernel single_block(double a, double w = 1.0);
    static LimitKernel even_type(const std::vector<double>& a_list, double w);
    static LimitKernel odd_type(const std::vector<double>& a_list, double w);
    static LimitKernel scaled_sine(int m);
    static LimitKernel cusp(double a, double b);
};

double bulk_kernel(const LimitKernel& kernel, double s);

/// Limit kernel matching a BlockSpec (single block, or even/odd type).
LimitKernel limit_kernel_for(const BlockSpec& spec);

/// Cosine frequency of the before-cusp kernel at bulk point 2 b sqrt(M),
/// 0 <= b <= a. Decreases to pi/2 as b -> a.
double cusp_omega(double a, double b);

/// Local kernel around 2 b sqrt(M): the sinc x cos family for 0 <= b <= a,
/// the sine kernel for a < b < a+1; domain error beyond the outer edge.
double cusp_kernel(double a, double b, double s);

/// omega -> c pi/2 crossover constant for b^2 = a^2 - 2 tau a, a -> infinity.
double crossover_c(double tau);

/// Edge rescaling constant eta = (a+1)^(1/3) / (2a+1)^(1/6); eta(0) = 1.
double edge_eta(double a);

/// Derived constants of the cusp/edge family for one (a, b, tau).
struct CuspParams {
    double a;
    double b;
    double tau;
    double c;    // crossover_c(tau)
    double eta;  // edge_eta(a)

    static CuspParams from_b(double a, double b);
    static CuspParams from_tau(double a, double tau);
};

/// Rescaled Airy kernel at the outer edge:
///   (Ai(eta x) Ai'(eta y) - Ai'(eta x) Ai(eta y)) / (x - y),
/// with the diagonal form eta (Ai'(eta x)^2 - eta x Ai(eta x)^2).
double edge_kernel(double a, double x, double y);

/// CUE kernel S_n(z) = sin(n z / 2) / (2 pi sin(z / 2)), S_n(0) = n / (2 pi).
double circular_kernel(std::int64_t n, double z);

/// Semicircle density (1/2pi) sqrt((4N - x^2)_+); integrates to N.
double semicircle_density(std::int64_t n, double x);

/// Large-M density of a block spec (difference of semicircles per block).
double blocks_density(const BlockSpec& spec, double x);

/// The same density computed as the x-projection of the uniform measure on
/// the nested phase-space annuli a_j^2 M < p^2 + x^2/4 < (a_j+w_j)^2 M.
double annulus_projection_density(const BlockSpec& spec, double x);

/// Large-a arcsine limit of the single-block density.
double arcsine_density(double a, std::int64_t m, double x);

/// Cumulative arcsine number density, clamped to [0, N].
double cumulative_arcsine(double a, std::int64_t m, double x);

}  // namespace blockdpp
