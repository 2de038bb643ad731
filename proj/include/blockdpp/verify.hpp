// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace blockdpp {

/// One verification line: a named figure of merit against its threshold.
struct VerifyResult {
    std::string id;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

/// Runs the numbered end-to-end criterion (1-based). A criterion may emit
/// several result lines; it passes iff all of them pass.
std::vector<VerifyResult> run_acceptance_criterion(int criterion, int threads = 1);

int acceptance_criteria_count();

/// Module-invariant suite (properties beyond the numbered criteria).
std::vector<VerifyResult> run_invariant_suite();

/// Full verification: the numbered criteria, plus the invariant suite unless
/// `quick` is set. Returns all result lines in order.
std::vector<VerifyResult> run_verification(bool quick, int threads = 1);

/// Upper regularized incomplete gamma Q(a, x); chi-square tail probability is
/// Q(dof/2, chi2/2). Exposed for the statistical tests.
double gamma_q(double a, double x);

/// Two-sample Kolmogorov-Smirnov statistic of two sorted samples.
double ks_statistic(const std::vector<double>& sorted_a, const std::vector<double>& sorted_b);

}  // namespace blockdpp
