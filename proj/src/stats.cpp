// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "blockdpp/kernel.hpp"

namespace blockdpp {

namespace {
constexpr double kPi = std::numbers::pi;
}

void StatSeries::validate() const {
    if (x.size() != y.size()) throw std::invalid_argument("StatSeries: |x| != |y|");
    if (!yerr.empty() && yerr.size() != y.size())
        throw std::invalid_argument("StatSeries: |yerr| != |y|");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("StatSeries: x must be strictly increasing");
}

double corr_n(const BlockSpec& spec, std::span<const double> points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) return 1.0;
    if (n > 12) throw std::invalid_argument("corr_n: more than 12 points");
    Eigen::MatrixXd mat(n, n);
    std::vector<std::vector<CdTriple>> feats;
    feats.reserve(points.size());
    for (double p : points) feats.push_back(block_features(spec, p));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mat(i, j) = kernel_block(spec, feats[i], feats[j], points[i], points[j]);
    return mat.determinant();
}

double corr_n(const LimitKernel& kernel, std::span<const double> points) {
    const int n = static_cast<int>(points.size());
    if (n == 0) return 1.0;
    if (kernel.kind == LimitKernelKind::scaled_sine && kernel.alpha != -1.0)
        return alpha_corr(AlphaParam::process(kernel.alpha), kernel, points);
    if (n > 12) throw std::invalid_argument("corr_n: more than 12 points");
    Eigen::MatrixXd mat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mat(i, j) = kernel(points[i] - points[j]);
    return mat.determinant();
}

double rho2_limit(double alpha, double s) {
    const double k = sinc(kPi * std::abs(alpha) * s);
    return 1.0 + alpha * k * k;
}

double rho3_limit_half(double x1, double x2, double x3) {
    const double s12 = sinc(0.5 * kPi * (x1 - x2));
    const double s23 = sinc(0.5 * kPi * (x2 - x3));
    const double s31 = sinc(0.5 * kPi * (x3 - x1));
    return 1.0 - 0.5 * (s12 * s12 + s23 * s23 + s31 * s31) + 0.5 * s12 * s23 * s31;
}

double structure_factor(double alpha, double k) {
    AlphaParam::process(alpha);
    const double kink = 2.0 * kPi * std::abs(alpha);
    return std::abs(k) <= kink ? std::abs(k) / kink : 1.0;
}

double total_correlation(double alpha, double r) {
    return rho2_limit(alpha, r) - 1.0;
}

double number_variance_finite(const BlockSpec& spec, double box_length,
                              const QuadratureSpec& quad) {
    if (!(box_length > 0.0))
        throw std::invalid_argument("number_variance_finite: box length must be positive");
    const double half = 0.5 * box_length;

    // Quadrature nodes repeat across panel rows and columns; memoize the
    // per-point CD features on the raw coordinate bits.
    std::unordered_map<std::uint64_t, std::vector<CdTriple>> cache;
    auto features = [&](double t) -> const std::vector<CdTriple>& {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(t);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, block_features(spec, t)).first;
        return it->second;
    };

    const double mean = integrate_1d(
        [&](double x) {
            const auto& fx = features(x);
            return kernel_block(spec, fx, fx, x, x);
        },
        -half, half, quad);
    const double overlap = integrate_2d(
        [&](double x, double y) {
            const double k = kernel_block(spec, features(x), features(y), x, y);
            return k * k;
        },
        -half, half, -half, half, quad);
    return mean - overlap;
}

double number_variance_bulk(const LimitKernel& kernel, double box_length,
                            const QuadratureSpec& quad) {
    if (!(box_length > 0.0))
        throw std::invalid_argument("number_variance_bulk: box length must be positive");
    // Translation invariance reduces the double integral to one dimension.
    const double overlap = integrate_1d(
        [&](double u) {
            const double k = kernel(u);
            return 2.0 * (box_length - u) * k * k;
        },
        0.0, box_length, quad);
    // Determinantal kinds subtract the full overlap; the scaled-sine kernel
    // describes the alpha process, whose pair correlation carries the
    // kernel-squared term with weight alpha instead of -1.
    if (kernel.kind == LimitKernelKind::scaled_sine)
        return box_length + kernel.alpha * overlap;
    return box_length - overlap;
}

double number_variance_alpha(double alpha, double box_length, const QuadratureSpec& quad) {
    AlphaParam::process(alpha);
    if (!(box_length > 0.0))
        throw std::invalid_argument("number_variance_alpha: box length must be positive");
    const double scale = kPi * std::abs(alpha);
    const double overlap = integrate_1d(
        [&](double u) {
            const double k = sinc(scale * u);
            return 2.0 * (box_length - u) * k * k;
        },
        0.0, box_length, quad);
    return box_length + alpha * overlap;
}

double nv_expansion(double alpha, double box_length, ExpansionRegime regime) {
    AlphaParam::process(alpha);
    const double l = box_length;
    if (l == 0.0) return 0.0;
    if (regime == ExpansionRegime::small) {
        const double a3 = alpha * alpha * alpha;
        const double a5 = a3 * alpha * alpha;
        return l + alpha * l * l - kPi * kPi / 18.0 * a3 * l * l * l * l +
               2.0 / 675.0 * kPi * kPi * kPi * kPi * a5 * l * l * l * l * l * l;
    }
    return -1.0 / (alpha * kPi * kPi) *
           (std::log(l) + std::log(-2.0 * kPi * alpha) + 1.0 + constants::euler_gamma);
}

namespace {

// Fixed tensor-product Gauss-Legendre grid over an n-box, sized so that each
// panel spans at most ~4 oscillation periods of the given axis frequency
// (order-16 panels resolve that to ~1e-9).
double tensor_integrate(const std::function<double(std::span<const double>)>& f,
                        const BoxN& box, double axis_frequency) {
    const int dim = static_cast<int>(box.size());
    const GaussLegendreRule& rule = gauss_legendre_rule(16);
    const int order = static_cast<int>(rule.nodes.size());

    std::vector<int> panels(dim);
    std::vector<double> width(dim);
    std::int64_t total_panels = 1;
    for (int d = 0; d < dim; ++d) {
        width[d] = box[d].second - box[d].first;
        const double periods = width[d] * axis_frequency / (2.0 * kPi);
        panels[d] = std::max(2, static_cast<int>(std::ceil(periods / 4.0)) + 1);
        total_panels *= panels[d];
    }

    std::vector<double> point(dim);
    std::vector<int> panel_index(dim, 0);
    double total = 0.0;
    for (std::int64_t p = 0; p < total_panels; ++p) {
        std::int64_t rem = p;
        for (int d = 0; d < dim; ++d) {
            panel_index[d] = static_cast<int>(rem % panels[d]);
            rem /= panels[d];
        }
        // Tensor GL over this panel.
        std::vector<int> node_index(dim, 0);
        const std::int64_t nodes_total = [&] {
            std::int64_t t = 1;
            for (int d = 0; d < dim; ++d) t *= order;
            return t;
        }();
        double panel_sum = 0.0;
        for (std::int64_t q = 0; q < nodes_total; ++q) {
            std::int64_t qr = q;
            double wq = 1.0;
            for (int d = 0; d < dim; ++d) {
                const int i = static_cast<int>(qr % order);
                qr /= order;
                const double h = width[d] / panels[d];
                const double lo = box[d].first + panel_index[d] * h;
                point[d] = lo + 0.5 * h * (1.0 + rule.nodes[i]);
                wq *= 0.5 * h * rule.weights[i];
            }
            panel_sum += wq * f(point);
        }
        total += panel_sum;
    }
    return total;
}

double max_frequency(const LimitKernel& kernel) {
    double f = kernel.sinc_scale;
    for (double w : kernel.frequencies) f = std::max(f, w);
    return f;
}

}  // namespace

double weak_convergence_gap(int n, const LimitKernel& oscillatory_kernel,
                            double alpha_target, const BoxN& window) {
    if (n != 2 && n != 3) throw std::invalid_argument("weak_convergence_gap: n must be 2 or 3");
    if (static_cast<int>(window.size()) != n)
        throw std::invalid_argument("weak_convergence_gap: window dimension mismatch");
    for (const auto& [lo, hi] : window)
        if (!(lo < hi)) throw std::invalid_argument("weak_convergence_gap: empty window");

    const AlphaParam alpha = AlphaParam::process(alpha_target);
    const LimitKernel limit = LimitKernel::scaled_sine(alpha.copies());

    std::vector<double> pts(n);
    auto det_osc = [&](std::span<const double> x) {
        std::copy(x.begin(), x.end(), pts.begin());
        return corr_n(oscillatory_kernel, pts);
    };
    auto det_alpha_fn = [&](std::span<const double> x) {
        std::copy(x.begin(), x.end(), pts.begin());
        return alpha_corr(alpha, limit, pts);
    };

    const double osc =
        tensor_integrate(det_osc, window, 2.0 * max_frequency(oscillatory_kernel) + kPi);
    const double lim = tensor_integrate(det_alpha_fn, window, 2.0 * limit.sinc_scale + kPi);
    return std::abs(osc - lim);
}

int cycle_count(std::span<const int> sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = sigma[j];
            if (j < 0 || j >= n) throw std::invalid_argument("cycle_count: not a permutation");
        }
    }
    return cycles;
}

double cos_cycle_limit_check(std::span<const int> sigma, double omega) {
    const int n = static_cast<int>(sigma.size());
    if (n < 1 || n > 6) throw std::invalid_argument("cos_cycle_limit_check: n must be in [1, 6]");
    {
        std::vector<bool> hit(n, false);
        for (int v : sigma) {
            if (v < 0 || v >= n || hit[v])
                throw std::invalid_argument("cos_cycle_limit_check: not a permutation");
            hit[v] = true;
        }
    }

    // The integrand factorizes over the cycles of sigma, so integrate each
    // cycle over its own unit cube and multiply.
    std::vector<bool> seen(n, false);
    double integral = 1.0;
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        std::vector<int> cycle;
        for (int j = i; !seen[j]; j = sigma[j]) {
            seen[j] = true;
            cycle.push_back(j);
        }
        const int len = static_cast<int>(cycle.size());
        if (len == 1) continue;  // cos(0) = 1
        const BoxN cube(len, {0.0, 1.0});
        auto f = [&](std::span<const double> x) {
            double prod = 1.0;
            for (int j = 0; j < len; ++j)
                prod *= std::cos(omega * (x[(j + 1) % len] - x[j]));
            return prod;
        };
        if (len <= 3) {
            integral *= tensor_integrate(f, cube, 2.0 * omega);
        } else {
            // Panel counts grow like omega^len; expand the cosine product into
            // phase factors instead, which integrates each term exactly.
            const int terms = 1 << len;
            double sum = 0.0;
            for (int eps = 0; eps < terms; ++eps) {
                std::complex<double> prod(1.0, 0.0);
                for (int j = 0; j < len; ++j) {
                    const int ej = (eps >> j) & 1 ? 1 : -1;
                    const int ejm = (eps >> ((j + len - 1) % len)) & 1 ? 1 : -1;
                    const double c = omega * (ejm - ej);
                    if (c == 0.0) continue;
                    prod *= std::complex<double>(std::sin(c), 1.0 - std::cos(c)) / c;
                }
                sum += prod.real();
            }
            integral *= sum / terms;
        }
    }
    const double target = std::ldexp(1.0, -(n - cycles));  // (1/2)^(n - m(sigma))
    return std::abs(integral - target);
}

}  // namespace blockdpp
