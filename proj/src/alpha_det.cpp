// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/alpha_det.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace blockdpp {

namespace {

int cycle_count(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
    }
    return cycles;
}

}  // namespace

double alpha_det_bruteforce(double alpha, const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("alpha_det: matrix must be square");
    if (n == 0) return 1.0;
    if (n > 9)
        throw std::invalid_argument(
            "alpha_det_bruteforce: n > 9; use alpha_det_cycles for larger matrices");

    std::vector<double> alpha_pow(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) alpha_pow[k] = alpha_pow[k - 1] * alpha;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    do {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(perm[i], i);
        sum += alpha_pow[n - cycle_count(perm)] * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

double alpha_det_cycles(double alpha, const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("alpha_det: matrix must be square");
    if (n == 0) return 1.0;
    if (n > 16) throw std::invalid_argument("alpha_det_cycles: n > 16 not supported");

    const unsigned full = (1u << n) - 1u;
    std::vector<double> alpha_pow(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) alpha_pow[k] = alpha_pow[k - 1] * alpha;

    // cycle_weight[S]: sum over directed cycles visiting exactly S, anchored
    // at min(S), of prod A[sigma(i)][i], times alpha^(|S|-1).
    std::vector<double> cycle_weight(full + 1, 0.0);
    {
        // path[S][v]: paths from min(S) through S ending at v.
        std::vector<double> path(static_cast<std::size_t>(full + 1) * n, 0.0);
        for (int s = 0; s < n; ++s) {
            const unsigned base = 1u << s;
            path[static_cast<std::size_t>(base) * n + s] = 1.0;
            for (unsigned mask = base; mask <= full; ++mask) {
                if ((mask & base) == 0u) continue;
                if ((mask & (base - 1u)) != 0u) continue;  // min(mask) must be s
                const double* row = &path[static_cast<std::size_t>(mask) * n];
                double close = 0.0;
                for (int v = s; v < n; ++v) {
                    const double pv = row[v];
                    if (pv == 0.0) continue;
                    close += pv * a(s, v);  // close the cycle: sigma(v) = s
                    for (int u = s + 1; u < n; ++u) {
                        if (mask & (1u << u)) continue;
                        path[(static_cast<std::size_t>(mask) | (1u << u)) * n + u] +=
                            pv * a(u, v);  // extend: sigma(v) = u
                    }
                }
                const int size = std::popcount(mask);
                cycle_weight[mask] = close * alpha_pow[size - 1];
            }
        }
    }

    // Partition DP: d[S] = sum over cycle decompositions of S.
    std::vector<double> d(full + 1, 0.0);
    d[0] = 1.0;
    for (unsigned mask = 1u; mask <= full; ++mask) {
        const unsigned low = mask & (~mask + 1u);  // bit of the smallest index
        const unsigned rest = mask ^ low;
        double sum = 0.0;
        // Enumerate subsets t of rest; the cycle through min(mask) is t | low.
        unsigned t = rest;
        while (true) {
            sum += cycle_weight[t | low] * d[rest ^ t];
            if (t == 0u) break;
            t = (t - 1u) & rest;
        }
        d[mask] = sum;
    }
    return d[full];
}

AlphaParam AlphaParam::process(double alpha) {
    if (alpha < 0.0) {
        const double inv = -1.0 / alpha;
        if (std::abs(inv - std::round(inv)) > 1e-9 || inv < 0.5)
            throw std::invalid_argument(
                "AlphaParam: negative alpha requires -1/alpha to be a positive integer");
    }
    return {alpha};
}

int AlphaParam::copies() const {
    const double inv = -1.0 / alpha;
    if (!(alpha < 0.0) || std::abs(inv - std::round(inv)) > 1e-9)
        throw std::logic_error("AlphaParam::copies: alpha is not -1/m");
    return static_cast<int>(std::llround(inv));
}

double alpha_corr(const AlphaParam& alpha, const LimitKernel& kernel,
                  std::span<const double> points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) return 1.0;
    if (n > 16) throw std::invalid_argument("alpha_corr: more than 16 points");
    Eigen::MatrixXd mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mat(i, j) = kernel(points[i] - points[j]);
    if (alpha.alpha == -1.0) return mat.determinant();
    return alpha_det_cycles(alpha.alpha, mat);
}

double superposition_corr(int m, const std::function<double(double)>& base_kernel,
                          std::span<const double> points) {
    const int n = static_cast<int>(points.size());
    if (m < 1) throw std::invalid_argument("superposition_corr: m must be >= 1");
    if (n > 8) throw std::invalid_argument("superposition_corr: more than 8 points");
    if (n == 0) return 1.0;

    Eigen::MatrixXd scaled(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            scaled(i, j) = base_kernel(points[i] - points[j]) / static_cast<double>(m);

    std::vector<int> color(n, 0);
    std::vector<int> group;
    double total = 0.0;
    while (true) {
        double prod = 1.0;
        for (int g = 0; g < m && prod != 0.0; ++g) {
            group.clear();
            for (int i = 0; i < n; ++i)
                if (color[i] == g) group.push_back(i);
            if (group.empty()) continue;
            Eigen::MatrixXd sub(group.size(), group.size());
            for (std::size_t r = 0; r < group.size(); ++r)
                for (std::size_t c = 0; c < group.size(); ++c)
                    sub(r, c) = scaled(group[r], group[c]);
            prod *= sub.determinant();
        }
        total += prod;

        int pos = 0;
        while (pos < n && ++color[pos] == m) color[pos++] = 0;
        if (pos == n) break;
    }
    return total;
}

}  // namespace blockdpp
