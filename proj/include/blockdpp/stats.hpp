// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "blockdpp/alpha_det.hpp"
#include "blockdpp/block_spec.hpp"
#include "blockdpp/limit_kernel.hpp"
#include "blockdpp/quadrature.hpp"

namespace blockdpp {

namespace constants {
inline constexpr double euler_gamma = 0.5772156649015329;
}

/// An (x, y) series with optional per-point errors and free-form metadata;
/// the universal CSV/JSON output record.
struct StatSeries {
    std::string label;
    std::string x_unit;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yerr;  // empty or same length as y
    std::map<std::string, std::string> meta;

    void validate() const;
};

/// n-point correlation of the finite-M block projection process:
/// det[K_J(x_i, x_j)].
double corr_n(const BlockSpec& spec, std::span<const double> points);

/// n-point correlation of a limit-kernel process. Determinantal kinds take
/// the plain determinant; the scaled-sine alpha process delegates to
/// alpha_corr.
double corr_n(const LimitKernel& kernel, std::span<const double> points);

/// Two-point function of the alpha limit process, 1 + alpha sinc^2(pi|alpha|s).
double rho2_limit(double alpha, double s);

/// Closed-form three-point function of the alpha = -1/2 limit process.
double rho3_limit_half(double x1, double x2, double x3);

/// Structure factor S(k) of the alpha limit process: |k|/(2 pi |alpha|)
/// inside the kink, 1 beyond.
double structure_factor(double alpha, double k);

/// Connected pair correlation h(r) = rho2 - 1 = alpha sinc^2(pi|alpha| r).
double total_correlation(double alpha, double r);

/// Number variance of the finite-M process in [-L/2, L/2]:
/// int K(x,x) - double int K(x,y)^2.
double number_variance_finite(const BlockSpec& spec, double box_length,
                              const QuadratureSpec& quad = {1e-8, 1e-10, 20000, 16});

/// Bulk-limit number variance L - int (L-|u|) k(u)^2 du.
double number_variance_bulk(const LimitKernel& kernel, double box_length,
                            const QuadratureSpec& quad = {});

/// Alpha-process number variance L + alpha int (L-|u|) sinc^2(pi|alpha|u) du.
double number_variance_alpha(double alpha, double box_length,
                             const QuadratureSpec& quad = {});

enum class ExpansionRegime { small, large };

/// Asymptotic expansions of the alpha-process number variance.
double nv_expansion(double alpha, double box_length, ExpansionRegime regime);

/// Axis-aligned box in R^n.
using BoxN = std::vector<std::pair<double, double>>;

/// | int_box det[k_osc(x_i - x_j)] - int_box det_alpha[scaled sine] | for
/// n = 2 or 3; the windowed weak-convergence discrepancy.
double weak_convergence_gap(int n, const LimitKernel& oscillatory_kernel,
                            double alpha_target, const BoxN& window);

/// Deviation of int_{[0,1]^n} prod_i cos(omega(x_{sigma(i)} - x_i)) dx from
/// its large-omega limit (1/2)^(n - #cycles).
double cos_cycle_limit_check(std::span<const int> sigma, double omega);

/// Number of cycles of a permutation given in one-line notation.
int cycle_count(std::span<const int> sigma);

}  // namespace blockdpp
