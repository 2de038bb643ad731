// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/kernel_grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "blockdpp/kernel.hpp"
#include "blockdpp/stats.hpp"

namespace blockdpp {

KernelGrid KernelGrid::build(const KernelSource& source, std::vector<double> points) {
    if (points.empty()) throw std::invalid_argument("KernelGrid: empty point set");
    if (!std::is_sorted(points.begin(), points.end()))
        throw std::invalid_argument("KernelGrid: points must be sorted");
    const int n = static_cast<int>(points.size());
    KernelGrid grid{std::move(points), Eigen::MatrixXd(n, n), source};
    if (const BlockSpec* spec = std::get_if<BlockSpec>(&source)) {
        std::vector<std::vector<CdTriple>> feats;
        feats.reserve(grid.points.size());
        for (double p : grid.points) feats.push_back(block_features(*spec, p));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                grid.values(i, j) = grid.values(j, i) = kernel_block(
                    *spec, feats[i], feats[j], grid.points[i], grid.points[j]);
    } else {
        const LimitKernel& kernel = std::get<LimitKernel>(source);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                grid.values(i, j) = grid.values(j, i) =
                    kernel(grid.points[i] - grid.points[j]);
    }
    return grid;
}

double KernelGrid::relative_min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(values);
    const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (largest == 0.0) return 0.0;
    return eig.eigenvalues().minCoeff() / largest;
}

double corr_n(const KernelSource& source, std::span<const double> points) {
    if (const BlockSpec* spec = std::get_if<BlockSpec>(&source)) return corr_n(*spec, points);
    return corr_n(std::get<LimitKernel>(source), points);
}

}  // namespace blockdpp
