// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace blockdpp {

void QuadratureSpec::validate() const {
    if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0))
        throw std::invalid_argument("quadrature tolerances must be strictly positive");
    if (panel_order < 2)
        throw std::invalid_argument("panel_order must be >= 2");
    if (max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
}

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n, roots seeded by the Chebyshev approximation.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double panel_1d(const std::function<double(double)>& f, double a, double b,
                const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double panel_2d(const std::function<double(double, double)>& f,
                double ax, double bx, double ay, double by,
                const GaussLegendreRule& rule) {
    const double mx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double my = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = mx + hx * rule.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            row += rule.weights[j] * f(x, my + hy * rule.nodes[j]);
        sum += rule.weights[i] * row;
    }
    return hx * hy * sum;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
    if (order < 2) throw std::invalid_argument("Gauss-Legendre order must be >= 2");
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureSpec& spec) {
    spec.validate();
    if (!(a <= b)) throw std::invalid_argument("integrate_1d: requires a <= b");
    if (a == b) return 0.0;
    const GaussLegendreRule& rule = gauss_legendre_rule(spec.panel_order);

    struct Segment {
        double a, b, estimate;
    };
    const double whole = panel_1d(f, a, b, rule);
    const double width = b - a;
    const double tol = std::max(spec.absolute_tolerance,
                                spec.relative_tolerance * std::abs(whole));

    std::vector<Segment> stack{{a, b, whole}};
    double accepted = 0.0;
    double accepted_error = 0.0;
    int splits = 0;
    while (!stack.empty()) {
        Segment seg = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (seg.a + seg.b);
        const double left = panel_1d(f, seg.a, mid, rule);
        const double right = panel_1d(f, mid, seg.b, rule);
        const double refined = left + right;
        const double err = std::abs(refined - seg.estimate);
        const double local_tol = tol * (seg.b - seg.a) / width;
        // Stop splitting once the panel is at the resolution floor, either
        // relative to the whole interval or to the coordinate ulp.
        const double floor_width = std::max(
            1e-15 * width, 8.0 * std::numeric_limits<double>::epsilon() *
                               std::max(std::abs(seg.a), std::abs(seg.b)));
        if (err <= local_tol || (seg.b - seg.a) <= floor_width) {
            accepted += refined;
            accepted_error += err;
            continue;
        }
        if (++splits > spec.max_subdivisions) {
            double pending = refined;
            for (const Segment& s : stack) pending += s.estimate;
            throw QuadratureError("quadrature did not converge within max_subdivisions",
                                  accepted + pending, accepted_error + err);
        }
        stack.push_back({seg.a, mid, left});
        stack.push_back({mid, seg.b, right});
    }
    return accepted;
}

double integrate_2d(const std::function<double(double, double)>& f,
                    double ax, double bx, double ay, double by,
                    const QuadratureSpec& spec) {
    spec.validate();
    if (!(ax <= bx) || !(ay <= by)) throw std::invalid_argument("integrate_2d: empty box");
    if (ax == bx || ay == by) return 0.0;
    const GaussLegendreRule& rule = gauss_legendre_rule(spec.panel_order);

    struct Panel {
        double ax, bx, ay, by, estimate;
    };
    const double whole = panel_2d(f, ax, bx, ay, by, rule);
    const double area = (bx - ax) * (by - ay);
    const double tol = std::max(spec.absolute_tolerance,
                                spec.relative_tolerance * std::abs(whole));

    std::vector<Panel> stack{{ax, bx, ay, by, whole}};
    double accepted = 0.0;
    double accepted_error = 0.0;
    int splits = 0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double mx = 0.5 * (p.ax + p.bx);
        const double my = 0.5 * (p.ay + p.by);
        const double q00 = panel_2d(f, p.ax, mx, p.ay, my, rule);
        const double q10 = panel_2d(f, mx, p.bx, p.ay, my, rule);
        const double q01 = panel_2d(f, p.ax, mx, my, p.by, rule);
        const double q11 = panel_2d(f, mx, p.bx, my, p.by, rule);
        const double refined = q00 + q10 + q01 + q11;
        const double err = std::abs(refined - p.estimate);
        const double panel_area = (p.bx - p.ax) * (p.by - p.ay);
        const double local_tol = tol * panel_area / area;
        const double eps = std::numeric_limits<double>::epsilon();
        const bool at_floor =
            (p.bx - p.ax) <= 8.0 * eps * std::max(std::abs(p.ax), std::abs(p.bx)) ||
            (p.by - p.ay) <= 8.0 * eps * std::max(std::abs(p.ay), std::abs(p.by)) ||
            panel_area < 1e-26 * area;
        if (err <= local_tol || at_floor) {
            accepted += refined;
            accepted_error += err;
            continue;
        }
        if (++splits > spec.max_subdivisions) {
            double pending = refined;
            for (const Panel& s : stack) pending += s.estimate;
            throw QuadratureError("quadrature did not converge within max_subdivisions",
                                  accepted + pending, accepted_error + err);
        }
        stack.push_back({p.ax, mx, p.ay, my, q00});
        stack.push_back({mx, p.bx, p.ay, my, q10});
        stack.push_back({p.ax, mx, my, p.by, q01});
        stack.push_back({mx, p.bx, my, p.by, q11});
    }
    return accepted;
}

}  // namespace blockdpp
