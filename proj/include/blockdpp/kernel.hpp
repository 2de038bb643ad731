// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockdpp/block_spec.hpp"
#include "blockdpp/hermite.hpp"

namespace blockdpp {

/// K_J(x, y) = sum_{k in J} psi_k(x) psi_k(y), evaluated as the literal sum
/// with a single recurrence sweep up to max(J).
double kernel_direct(std::span<const std::int64_t> levels, double x, double y);

/// Christoffel-Darboux form of the ground-state kernel sum_{k < n}:
///   sqrt(n) (psi_n(x) psi_{n-1}(y) - psi_{n-1}(x) psi_n(y)) / (x - y),
/// switching to the derivative form inside |x - y| < kCdDiagonalRadius.
/// kernel_cd(0, ., .) = 0.
double kernel_cd(std::int64_t n, double x, double y);

inline constexpr double kCdDiagonalRadius = 1e-6;

/// Per-point CD data for every block boundary of a spec (one triple per
/// boundary level, ordered lo_0, hi_0, lo_1, hi_1, ...).
std::vector<CdTriple> block_features(const BlockSpec& spec, double x);

/// K_J(x, y) assembled from precomputed features of the two points.
double kernel_block(const BlockSpec& spec, std::span<const CdTriple> fx,
                    std::span<const CdTriple> fy, double x, double y);

/// K_J(x, y) as the signed sum of CD kernels over the block boundaries.
double kernel_block(const BlockSpec& spec, double x, double y);

/// One-point density rho_1(x) = K_J(x, x).
double density_finite(const BlockSpec& spec, double x);

}  // namespace blockdpp
