// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockdpp {

/// Tolerances and panel parameters for the adaptive Gauss-Legendre rules.
struct QuadratureSpec {
    double relative_tolerance = 1e-10;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 20000;
    int panel_order = 16;

    void validate() const;
};

/// Thrown when the adaptive subdivision budget is exhausted. Carries the
/// best available estimate and the accumulated error bound.
class QuadratureError : public std::runtime_error {
 public:
    QuadratureError(const std::string& what, double last_estimate, double error_bound)
        : std::runtime_error(what), last_estimate_(last_estimate), error_bound_(error_bound) {}

    double last_estimate() const { return last_estimate_; }
    double error_bound() const { return error_bound_; }

 private:
    double last_estimate_;
    double error_bound_;
};

/// Nodes and weights of the order-n Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule lookup; rules are computed once per order by Newton iteration
/// on the Legendre recurrence.
const GaussLegendreRule& gauss_legendre_rule(int order);

/// Adaptive panel integration of f over [a, b].
/// Returns I with |I - integral| <= max(abs_tol, rel_tol*|I|) for
/// piecewise-smooth f. Throws QuadratureError on non-convergence.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureSpec& spec = {});

/// Adaptive tensor-product panels over the box [ax, bx] x [ay, by],
/// same tolerance contract as integrate_1d.
double integrate_2d(const std::function<double(double, double)>& f,
                    double ax, double bx, double ay, double by,
                    const QuadratureSpec& spec = {});

}  // namespace blockdpp
