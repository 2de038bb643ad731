// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "blockdpp/block_spec.hpp"
#include "blockdpp/limit_kernel.hpp"

namespace blockdpp {

/// Kernel provenance: a finite-M block projection or a scaling-limit kernel.
using KernelSource = std::variant<BlockSpec, LimitKernel>;

/// Symmetric matrix of kernel evaluations on a sorted point set; each
/// unordered pair is evaluated once, so values(i,j) == values(j,i) exactly.
struct KernelGrid {
    std::vector<double> points;
    Eigen::MatrixXd values;
    KernelSource source;

    static KernelGrid build(const KernelSource& source, std::vector<double> points);

    /// Smallest eigenvalue over the largest, for the positive-semidefiniteness
    /// check of finite-M sources.
    double relative_min_eigenvalue() const;
};

/// n-point correlation of a kernel source at the given points (determinant
/// for determinantal sources, det_alpha for the scaled-sine alpha process).
double corr_n(const KernelSource& source, std::span<const double> points);

}  // namespace blockdpp
