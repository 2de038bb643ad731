// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>

#include "blockdpp/limit_kernel.hpp"

namespace blockdpp {

/// det_alpha(A) = sum over permutations of alpha^(n - #cycles) * prod A[s(i)][i].
/// Exact enumeration over S_n; n <= 9.
double alpha_det_bruteforce(double alpha, const Eigen::MatrixXd& a);

/// Same value via a subset dynamic program over the cycle containing the
/// smallest unused index; n <= 16. Summation order is fixed (ascending subset
/// index) for bitwise reproducibility.
double alpha_det_cycles(double alpha, const Eigen::MatrixXd& a);

/// Process-level alpha parameter. Matrix-level det_alpha accepts any real
/// alpha; a process requires alpha = -1/m with m a positive integer.
struct AlphaParam {
    double alpha;

    /// Validates -1/alpha in N (existence of the alpha-determinantal process).
    static AlphaParam process(double alpha);
    static AlphaParam matrix_level(double alpha) { return {alpha}; }

    /// m = -1/alpha for process-level parameters.
    int copies() const;
};

/// n-point correlation det_alpha[k(x_i - x_j)] of the alpha-process with a
/// translation-invariant kernel; alpha = -1 takes the plain determinant path.
double alpha_corr(const AlphaParam& alpha, const LimitKernel& kernel,
                  std::span<const double> points);

/// Correlation of the union of m i.i.d. determinantal processes with kernel
/// base/m: sum over colorings of per-color determinants. n <= 8.
double superposition_corr(int m, const std::function<double(double)>& base_kernel,
                          std::span<const double> points);

}  // namespace blockdpp
