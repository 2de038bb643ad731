// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>

#include "blockdpp/airy.hpp"
#include "blockdpp/alpha_det.hpp"
#include "blockdpp/block_spec.hpp"
#include "blockdpp/hermite.hpp"
#include "blockdpp/kernel.hpp"
#include "blockdpp/limit_kernel.hpp"
#include "blockdpp/quadrature.hpp"
#include "blockdpp/sampler.hpp"
#include "blockdpp/stats.hpp"

namespace blockdpp {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double uniform(RngStream& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_double();
}

// ---------------------------------------------------------------------------
// Statistical helpers
// ---------------------------------------------------------------------------

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    // Lentz continued fraction for Q(a, x), x > a + 1.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

namespace {

VerifyResult line(const std::string& id, double observed, double tolerance, bool pass,
                  Clock::time_point start) {
    return {id, observed, tolerance, pass, elapsed(start)};
}

VerifyResult below(const std::string& id, double observed, double tolerance,
                   Clock::time_point start) {
    return line(id, observed, tolerance, observed <= tolerance, start);
}

// ---------------------------------------------------------------------------
// Criterion 1: alpha-determinant oracle equivalence
// ---------------------------------------------------------------------------

// One enumeration pass computing det_alpha for several alphas at once, plus
// the matching sums of |alpha|^(n-m) |prod| that set the comparison scale.
void bruteforce_batch(const Eigen::MatrixXd& a, std::span<const double> alphas,
                      std::span<double> values, std::span<double> scales) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::fill(values.begin(), values.end(), 0.0);
    std::fill(scales.begin(), scales.end(), 0.0);
    std::vector<bool> seen(n);
    do {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(perm[i], i);
        std::fill(seen.begin(), seen.end(), false);
        int cycles = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
        }
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            double pw = 1.0;
            for (int e = 0; e < n - cycles; ++e) pw *= alphas[k];
            if (n != cycles && alphas[k] == 0.0) pw = 0.0;
            values[k] += pw * prod;
            scales[k] += std::abs(pw * prod);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<VerifyResult> crit1() {
    const auto t0 = Clock::now();
    const std::vector<double> alphas = {-1.0, -0.5, -1.0 / 3.0, 0.0, 1.0};
    double worst = 0.0;
    std::vector<double> values(alphas.size()), scales(alphas.size());
    for (int i = 0; i < 500; ++i) {
        RngStream rng({101, static_cast<std::uint64_t>(i)});
        const int n = 2 + i % 8;
        Eigen::MatrixXd a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = uniform(rng, -1.0, 1.0);
        bruteforce_batch(a, alphas, values, scales);
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            const double dp = alpha_det_cycles(alphas[k], a);
            worst = std::max(worst, std::abs(values[k] - dp) / std::max(scales[k], 1e-300));
        }
    }
    return {below("c1.alpha_det_equivalence", worst, 1e-12, t0)};
}

// ---------------------------------------------------------------------------
// Criterion 2: superposition identity
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit2() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        RngStream rng({202, static_cast<std::uint64_t>(i)});
        const int n = 2 + i % 5;
        const int m = 1 + i % 4;
        std::vector<double> pts(n);
        for (double& p : pts) p = uniform(rng, -3.0, 3.0);
        const LimitKernel kernel = LimitKernel::scaled_sine(m);
        const double ac = alpha_corr(AlphaParam::process(-1.0 / m), kernel, pts);
        const double sc = superposition_corr(
            m, [&](double s) { return sinc(kPi * s / m); }, pts);
        worst = std::max(worst, std::abs(ac - sc));
    }
    return {below("c2.superposition_identity", worst, 1e-11, t0)};
}

// ---------------------------------------------------------------------------
// Criterion 3: kernel_block vs kernel_direct cross-check
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit3() {
    const auto t0 = Clock::now();
    const std::vector<BlockSpec> specs = {
        BlockSpec({{0.0, 1.0}}, 100),
        BlockSpec({{1.0, 1.0}}, 50),
        BlockSpec({{0.0, 0.5}, {2.0, 1.0}}, 8, Parity::odd),
        BlockSpec({{1.0, 1.0}, {3.0, 1.0}}, 4, Parity::even),
        BlockSpec({{2.0, 1.0}}, 1111),
        BlockSpec({{0.0, 1.0}}, 10000),
    };
    double worst = 0.0;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        const BlockSpec& spec = specs[s];
        const auto levels = spec.levels();
        const double edge = 0.9 * spec.support_edge();
        std::vector<double> direct(100), block(100);
        RngStream rng({303, s});
        double rms = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = uniform(rng, -edge, edge);
            const double y = uniform(rng, -edge, edge);
            direct[i] = kernel_direct(levels, x, y);
            block[i] = kernel_block(spec, x, y);
            rms += direct[i] * direct[i];
        }
        rms = std::sqrt(rms / 100.0);
        for (int i = 0; i < 100; ++i) {
            const double rel =
                std::abs(block[i] - direct[i]) / std::max(std::abs(direct[i]), 1e-3 * rms);
            worst = std::max(worst, rel);
        }
    }
    return {below("c3.kernel_block_vs_direct", worst, 1e-9, t0)};
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5: density asymptotics
// ---------------------------------------------------------------------------

double bulk_l1_relative(const BlockSpec& spec, const std::function<double(double)>& limit) {
    const double hi = 0.8 * spec.support_edge();
    const QuadratureSpec quad{1e-8, 1e-10, 20000, 16};
    const double num = integrate_1d(
        [&](double x) { return std::abs(density_finite(spec, x) - limit(x)); }, -hi, hi, quad);
    const double den = integrate_1d(limit, -hi, hi, quad);
    return num / den;
}

std::vector<VerifyResult> crit4() {
    const auto t0 = Clock::now();
    const BlockSpec gs({{0.0, 1.0}}, 100);
    const double err =
        bulk_l1_relative(gs, [](double x) { return semicircle_density(100, x); });
    return {below("c4.semicircle_bulk_l1", err, 0.02, t0)};
}

std::vector<VerifyResult> crit5() {
    auto t0 = Clock::now();
    const BlockSpec spec({{1.0, 1.0}}, 100);
    std::vector<VerifyResult> out;
    const double err =
        bulk_l1_relative(spec, [&](double x) { return blocks_density(spec, x); });
    out.push_back(below("c5.two_block_bulk_l1", err, 0.03, t0));

    t0 = Clock::now();
    double worst = 0.0;
    const double edge = 1.1 * spec.support_edge();
    for (int i = 0; i <= 1000; ++i) {
        const double x = -edge + 2.0 * edge * i / 1000;
        worst = std::max(worst,
                         std::abs(blocks_density(spec, x) - annulus_projection_density(spec, x)));
    }
    out.push_back(below("c5.annulus_identity", worst, 1e-12, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: bulk kernel convergence
// ---------------------------------------------------------------------------

double bulk_kernel_sup_error(double a, std::int64_t m) {
    const BlockSpec spec({{a, 1.0}}, m);
    const double rho0 = density_finite(spec, 0.0);
    const LimitKernel limit = LimitKernel::single_block(a);
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double s = 4.0 * i / 400;
        const double rescaled =
            kernel_block(spec, 0.5 * s / rho0, -0.5 * s / rho0) / rho0;
        sup = std::max(sup, std::abs(rescaled - limit(s)));
    }
    return sup;
}

std::vector<VerifyResult> crit6() {
    auto t0 = Clock::now();
    const double sup50 = bulk_kernel_sup_error(5.0, 50);
    const double sup200 = bulk_kernel_sup_error(5.0, 200);
    std::vector<VerifyResult> out;
    out.push_back(line("c6.bulk_kernel_sup_decreasing", sup200, sup50, sup200 < sup50, t0));
    t0 = Clock::now();
    out.push_back(below("c6.bulk_kernel_sup_at_m200", sup200, 0.02, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: weak convergence to alpha = -1/2
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit7() {
    const auto t0 = Clock::now();
    const BoxN window{{0.0, 1.0}, {0.0, 1.0}};
    const double g5 = weak_convergence_gap(2, LimitKernel::single_block(5.0), -0.5, window);
    const double g20 = weak_convergence_gap(2, LimitKernel::single_block(20.0), -0.5, window);
    const double g80 = weak_convergence_gap(2, LimitKernel::single_block(80.0), -0.5, window);
    std::vector<VerifyResult> out;
    out.push_back(line("c7.gap_strictly_decreasing", g80, g20,
                       g5 > g20 && g20 > g80, t0));
    out.push_back(below("c7.gap_at_a80", g80, 0.01, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: cos-cycle limits
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit8() {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    const std::vector<int> transposition{1, 0};
    const double omega = 100.0;
    const double dev = cos_cycle_limit_check(transposition, omega);
    const double exact = 0.5 * std::sin(omega) * std::sin(omega) / (omega * omega);
    out.push_back(below("c8.transposition_exact_identity", std::abs(dev - exact), 1e-9, t0));

    t0 = Clock::now();
    const std::vector<int> three_cycle{1, 2, 0};
    out.push_back(below("c8.three_cycle_deviation", cos_cycle_limit_check(three_cycle, 200.0),
                        1e-3, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 9: cusp continuity
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit9() {
    const auto t0 = Clock::now();
    const double a = 3.0;
    const double b = a - 1e-6;
    double sup = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double s = 5.0 * i / 500;
        sup = std::max(sup, std::abs(cusp_kernel(a, b, s) - sinc(kPi * s)));
    }
    return {below("c9.cusp_continuity_eps1e6", sup, 1e-5, t0)};
}

// ---------------------------------------------------------------------------
// Criterion 10: Dyson-Mehta asymptotics
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit10() {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    const double big = number_variance_alpha(-1.0, 100.0);
    const double dm = nv_expansion(-1.0, 100.0, ExpansionRegime::large);
    out.push_back(below("c10.dyson_mehta_l100", std::abs(big - dm), 1e-3, t0));

    t0 = Clock::now();
    const double small = number_variance_alpha(-1.0, 0.2);
    const double series = nv_expansion(-1.0, 0.2, ExpansionRegime::small);
    out.push_back(below("c10.small_l_expansion", std::abs(small - series), 1e-5, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 11: structure factor and Fourier duality
// ---------------------------------------------------------------------------

// Numerical Fourier transform of h(r) = alpha sinc^2(pi |alpha| r) with an
// analytically bounded truncation tail (<= 3e-7).
double h_hat_numeric(double alpha, double k) {
    const double a = std::abs(alpha);
    const double r_max = 2.0 / (kPi * kPi * a * 3e-7);
    const double freq = 2.0 * kPi * a + k + 0.5;
    const long panels = static_cast<long>(std::ceil(r_max * freq / (2.0 * kPi) / 4.0)) + 1;
    const GaussLegendreRule& rule = gauss_legendre_rule(16);
    const double h = r_max / static_cast<double>(panels);
    double sum = 0.0;
    for (long p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * h;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = mid + 0.5 * h * rule.nodes[i];
            acc += rule.weights[i] * total_correlation(alpha, r) * std::cos(k * r);
        }
        sum += 0.5 * h * acc;
    }
    return 2.0 * sum;
}

std::vector<VerifyResult> crit11() {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    double worst_exact = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const double alpha = -1.0 / m;
        const double aa = std::abs(alpha);
        worst_exact = std::max(worst_exact, std::abs(structure_factor(alpha, 0.0) - 0.0));
        worst_exact =
            std::max(worst_exact, std::abs(structure_factor(alpha, kPi * aa) - 0.5));
        worst_exact =
            std::max(worst_exact, std::abs(structure_factor(alpha, 2.0 * kPi * aa) - 1.0));
        worst_exact =
            std::max(worst_exact, std::abs(structure_factor(alpha, 3.0 * kPi * aa) - 1.0));
    }
    out.push_back(below("c11.structure_factor_exact_values", worst_exact, 1e-15, t0));

    t0 = Clock::now();
    double worst_dual = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const double alpha = -1.0 / m;
        const double aa = std::abs(alpha);
        // Seven multiples of pi |alpha| per m: 21 sampled k straddling the kink.
        for (double mult : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
            const double k = mult * kPi * aa;
            const double dual = 1.0 + h_hat_numeric(alpha, k);
            worst_dual = std::max(worst_dual, std::abs(dual - structure_factor(alpha, k)));
        }
    }
    out.push_back(below("c11.fourier_duality", worst_dual, 1e-6, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 12: finite-M number variance against the alpha = -1/2 curve
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit12() {
    const auto t0 = Clock::now();
    const BlockSpec spec({{10.0, 1.0}}, 20);
    const double rho0 = density_finite(spec, 0.0);
    const QuadratureSpec quad{1e-6, 1e-8, 40000, 16};
    double worst = 0.0;
    for (int i = 1; i <= 8; ++i) {
        const double l = static_cast<double>(i);
        const double finite = number_variance_finite(spec, l / rho0, quad);
        const double limit = number_variance_alpha(-0.5, l);
        worst = std::max(worst, std::abs(finite - limit) / limit);
    }
    return {below("c12.fig5_rescaled_nv", worst, 0.10, t0)};
}

// ---------------------------------------------------------------------------
// Criterion 13: sampler correctness
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit13(int threads) {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    const BlockSpec gs({{0.0, 1.0}}, 10);
    const DppSampler sampler(HermiteBasis{gs});
    const int replicates = 10000;
    const RngContract base{4242, 0};
    const auto samples = sample_replicates(sampler, base, replicates, threads);

    // Cardinality.
    double bad_cardinality = 0.0;
    for (const PointSample& s : samples)
        if (s.positions.size() != 10) bad_cardinality += 1.0;
    out.push_back(below("c13.cardinality", bad_cardinality, 0.0, t0));

    // Chi-square on 40 bins.
    t0 = Clock::now();
    constexpr int kBins = 40;
    const double lo = -7.3, hi = 7.3;
    std::vector<double> observed(kBins, 0.0);
    for (const PointSample& s : samples)
        for (double p : s.positions) {
            if (p < lo || p >= hi) continue;
            ++observed[static_cast<std::size_t>((p - lo) / (hi - lo) * kBins)];
        }
    const QuadratureSpec quad{1e-9, 1e-11, 20000, 16};
    double chi2 = 0.0;
    for (int b = 0; b < kBins; ++b) {
        const double x0 = lo + (hi - lo) * b / kBins;
        const double x1 = lo + (hi - lo) * (b + 1) / kBins;
        const double expected =
            replicates *
            integrate_1d([&](double x) { return density_finite(gs, x); }, x0, x1, quad);
        chi2 += (observed[b] - expected) * (observed[b] - expected) / expected;
    }
    const double p_value = gamma_q(0.5 * (kBins - 1), 0.5 * chi2);
    out.push_back(line("c13.density_chi2_pvalue", p_value, 1e-3, p_value > 1e-3, t0));

    // Bit-identical reruns across 1, 4, 8 threads.
    t0 = Clock::now();
    double mismatches = 0.0;
    for (int th : {4, 8}) {
        const auto rerun = sample_replicates(sampler, base, replicates, th);
        for (int r = 0; r < replicates; ++r)
            if (rerun[static_cast<std::size_t>(r)].positions !=
                samples[static_cast<std::size_t>(r)].positions)
                mismatches += 1.0;
    }
    out.push_back(below("c13.thread_determinism", mismatches, 0.0, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 14: Rains power-map decoupling
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit14(int threads) {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    const int m = 2;
    const std::int64_t n = 8;
    if (m > n) throw std::invalid_argument("rains experiment requires m <= N");
    const int replicates = 10000;

    const DppSampler big(FourierBasis{m * n});
    const DppSampler small(FourierBasis{n});
    auto mapped = sample_replicates(big, {11, 0}, replicates, threads);
    for (PointSample& s : mapped) s = power_map(s, m);
    const auto unions = sample_replicates(small, {13, 0}, replicates, threads, m);

    // First-gap two-sample KS (one gap per replicate keeps draws independent).
    std::vector<double> gap_a, gap_b;
    gap_a.reserve(mapped.size());
    gap_b.reserve(unions.size());
    for (const PointSample& s : mapped) gap_a.push_back(s.positions[1] - s.positions[0]);
    for (const PointSample& s : unions) gap_b.push_back(s.positions[1] - s.positions[0]);
    std::sort(gap_a.begin(), gap_a.end());
    std::sort(gap_b.begin(), gap_b.end());
    const double d = ks_statistic(gap_a, gap_b);
    const double scaled =
        d * std::sqrt(static_cast<double>(gap_a.size()) * gap_b.size() /
                      (gap_a.size() + gap_b.size()));
    // 1.9495 is the Kolmogorov critical value at significance 1e-3.
    out.push_back(below("c14.rains_gap_ks", scaled, 1.9495, t0));

    // Pair correlation of the mapped process against the alpha = -1/2 form
    // with the exact finite-n circular kernel.
    t0 = Clock::now();
    const StatSeries pc = estimate_pair_correlation(mapped, 0.0, 4.0, 20);
    const double density = static_cast<double>(m * n) / (2.0 * kPi);
    double worst_sigma = 0.0;
    for (std::size_t bnum = 0; bnum < pc.x.size(); ++bnum) {
        const double z = pc.x[bnum] / density;  // physical angle separation
        const double kk = circular_kernel(n, z) / circular_kernel(n, 0.0);
        const double predicted = 1.0 - 0.5 * kk * kk;
        worst_sigma =
            std::max(worst_sigma, std::abs(pc.y[bnum] - predicted) / pc.yerr[bnum]);
    }
    out.push_back(below("c14.rains_pair_correlation_3sigma", worst_sigma, 3.0, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 15: Airy values and ODE residual
// ---------------------------------------------------------------------------

std::vector<VerifyResult> crit15() {
    auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    const AiryValue at0 = airy(0.0);
    out.push_back(below("c15.airy_ai0", std::abs(at0.ai - ai0), 1e-9, t0));
    out.push_back(below("c15.airy_aip0", std::abs(at0.ai_prime - aip0), 1e-9, t0));

    t0 = Clock::now();
    double worst = 0.0;
    const double h = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const double x = -10.0 + 15.0 * i / 199;
        // Ai'' from the 5-point central difference of ai_prime.
        const double d2 = (-airy(x + 2 * h).ai_prime + 8.0 * airy(x + h).ai_prime -
                           8.0 * airy(x - h).ai_prime + airy(x - 2 * h).ai_prime) /
                          (12.0 * h);
        worst = std::max(worst, std::abs(d2 - x * airy(x).ai));
    }
    out.push_back(below("c15.airy_ode_residual", worst, 1e-8, t0));

    t0 = Clock::now();
    out.push_back(line("c15.edge_eta_at_zero", edge_eta(0.0), 1.0, edge_eta(0.0) == 1.0, t0));
    return out;
}

// ---------------------------------------------------------------------------
// Module invariants beyond the numbered criteria
// ---------------------------------------------------------------------------

std::vector<VerifyResult> invariants() {
    std::vector<VerifyResult> out;

    {  // Gauss-Legendre exactness on degree 2p-1.
        const auto t0 = Clock::now();
        const GaussLegendreRule& rule = gauss_legendre_rule(16);
        double value = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = 0.5 * (1.0 + rule.nodes[i]);
            value += 0.5 * rule.weights[i] * std::pow(x, 31);
        }
        out.push_back(below("inv.quadrature.gl_exactness",
                            std::abs(value - 1.0 / 32.0) * 32.0, 1e-13, t0));
    }
    {  // Separability of the 2-d rule.
        const auto t0 = Clock::now();
        const double prod = integrate_1d([](double x) { return std::exp(x); }, 0.0, 1.0) *
                            integrate_1d([](double y) { return std::cos(3.0 * y); }, 0.0, 2.0);
        const double two = integrate_2d(
            [](double x, double y) { return std::exp(x) * std::cos(3.0 * y); }, 0.0, 1.0, 0.0,
            2.0);
        out.push_back(
            below("inv.quadrature.separability", std::abs(two - prod) / std::abs(prod), 1e-10, t0));
    }
    {  // Hermite orthonormality for j, k <= 20.
        const auto t0 = Clock::now();
        const QuadratureSpec quad{1e-11, 1e-13, 40000, 16};
        double worst = 0.0;
        for (int j = 0; j <= 20; ++j)
            for (int k = j; k <= 20; ++k) {
                const double integral = integrate_1d(
                    [&](double x) { return psi(j, x) * psi(k, x); }, -40.0, 40.0, quad);
                worst = std::max(worst, std::abs(integral - (j == k ? 1.0 : 0.0)));
            }
        out.push_back(below("inv.hermite.orthonormality", worst, 1e-9, t0));
    }
    {  // psi_prime against central differences.
        const auto t0 = Clock::now();
        RngStream rng({404, 0});
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 100; ++i) {
            const std::int64_t k = static_cast<std::int64_t>(uniform(rng, 0.0, 50.999));
            const double x = uniform(rng, -10.0, 10.0);
            const double fd = (psi(k, x + h) - psi(k, x - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(psi_prime(k, x) - fd));
        }
        out.push_back(below("inv.hermite.psi_prime_fd", worst, 1e-7, t0));
    }
    {  // Kernel symmetry and Hermite parity.
        const auto t0 = Clock::now();
        const BlockSpec spec({{1.0, 1.0}, {3.0, 1.0}}, 6, Parity::even);
        RngStream rng({505, 0});
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double x = uniform(rng, -15.0, 15.0);
            const double y = uniform(rng, -15.0, 15.0);
            const double k = kernel_block(spec, x, y);
            worst = std::max(worst, std::abs(k - kernel_block(spec, y, x)));
            worst = std::max(worst, std::abs(k - kernel_block(spec, -x, -y)));
        }
        out.push_back(below("inv.kernel.symmetry_parity", worst, 1e-12, t0));
    }
    {  // Discretized projection spectrum within [-1e-8, 1 + 1e-8]. A uniform
        // midpoint grid is spectrally accurate for these fast-decaying
        // analytic integrands once the spacing resolves the top momentum.
        const auto t0 = Clock::now();
        const BlockSpec gs({{0.0, 1.0}}, 10);
        const int n = 30;
        const double pmax = std::sqrt(2.0 * 9.5);
        const double half = 2.0 * kPi * n / (2.0 * (2.0 * pmax + 4.0));
        const double h = 2.0 * half / n;
        Eigen::MatrixXd gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double xi = -half + (i + 0.5) * h;
                const double xj = -half + (j + 0.5) * h;
                gram(i, j) = gram(j, i) = h * kernel_block(gs, xi, xj);
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        const double lo = eig.eigenvalues().minCoeff();
        const double hi = eig.eigenvalues().maxCoeff();
        const double excess = std::max(-lo, hi - 1.0);
        out.push_back(below("inv.kernel.projection_spectrum", excess, 1e-8, t0));
    }
    {  // Trace normalization for two specs.
        const auto t0 = Clock::now();
        const QuadratureSpec quad{1e-9, 1e-11, 40000, 16};
        double worst = 0.0;
        for (const BlockSpec& spec :
             {BlockSpec({{0.0, 1.0}}, 20), BlockSpec({{1.0, 1.0}}, 12)}) {
            const double bound = spec.support_edge() * 1.5 + 10.0;
            const double trace = integrate_1d(
                [&](double x) { return density_finite(spec, x); }, -bound, bound, quad);
            worst = std::max(worst,
                             std::abs(trace - static_cast<double>(spec.num_levels())) /
                                 static_cast<double>(spec.num_levels()));
        }
        out.push_back(below("inv.kernel.trace_normalization", worst, 1e-6, t0));
    }
    {  // Small-box number variance is K(0,0) L to first order.
        const auto t0 = Clock::now();
        const BlockSpec gs({{0.0, 1.0}}, 20);
        const double l = 1e-3;
        const double var = number_variance_finite(gs, l);
        const double linear = density_finite(gs, 0.0) * l;
        out.push_back(below("inv.stats.nv_small_box", std::abs(var / linear - 1.0), 0.01, t0));
    }
    {  // Limit kernels are bounded by 1 and even_type(B=1) == single_block.
        const auto t0 = Clock::now();
        double worst = 0.0;
        const std::vector<LimitKernel> kernels = {
            LimitKernel::sine(), LimitKernel::single_block(3.0),
            LimitKernel::even_type({2.0, 5.0}, 1.0), LimitKernel::odd_type({4.0}, 1.0),
            LimitKernel::scaled_sine(3)};
        for (const LimitKernel& kernel : kernels)
            for (int i = 0; i <= 2000; ++i)
                worst = std::max(worst, std::abs(kernel(50.0 * i / 2000)) - 1.0);
        out.push_back(below("inv.limit.bounded_by_one", worst, 0.0, t0));

        const auto t1 = Clock::now();
        const LimitKernel even1 = LimitKernel::even_type({2.5}, 1.0);
        const LimitKernel single = LimitKernel::single_block(2.5);
        RngStream rng({606, 0});
        double diff = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double s = uniform(rng, -20.0, 20.0);
            diff = std::max(diff, std::abs(even1(s) - single(s)));
        }
        out.push_back(below("inv.limit.even_b1_reduction", diff, 1e-15, t1));
    }
    {  // Cusp kernel approaches the sine kernel with a sqrt(eps) modulus.
        const auto t0 = Clock::now();
        auto sup_diff = [](double eps) {
            double sup = 0.0;
            for (int i = 0; i <= 500; ++i) {
                const double s = 5.0 * i / 500;
                sup = std::max(sup, std::abs(cusp_kernel(3.0, 3.0 - eps, s) - sinc(kPi * s)));
            }
            return sup;
        };
        const double s6 = sup_diff(1e-6), s8 = sup_diff(1e-8), s10 = sup_diff(1e-10);
        out.push_back(line("inv.limit.cusp_modulus_decreasing", s10, s8,
                           s6 > s8 && s8 > s10 && s10 < 1e-4, t0));
    }
    {  // Edge kernel diagonal vs near-diagonal.
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (double a : {0.0, 1.0, 4.0})
            for (double x : {-2.0, -0.5, 0.0, 1.0}) {
                const double diag = edge_kernel(a, x, x);
                const double near = edge_kernel(a, x + 1e-5, x - 1e-5);
                worst = std::max(worst, std::abs(diag - near));
            }
        out.push_back(below("inv.limit.edge_diagonal_consistency", worst, 1e-5, t0));
    }
    {  // Circular kernel reproducing property: int S_n^2 = S_n(0) over the
        // circle for every n, int S_n = 1 for odd n (the even-n sine-ratio
        // form integrates to 0 because of its half-integer phase).
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (std::int64_t n : {1LL, 2LL, 7LL, 16LL}) {
            const double sq = integrate_1d(
                [&](double z) {
                    const double s = circular_kernel(n, z);
                    return s * s;
                },
                0.0, 2.0 * kPi);
            worst = std::max(worst, std::abs(sq - circular_kernel(n, 0.0)));
        }
        for (std::int64_t n : {1LL, 7LL, 15LL}) {
            const double integral = integrate_1d(
                [&](double z) { return circular_kernel(n, z); }, 0.0, 2.0 * kPi);
            worst = std::max(worst, std::abs(integral - 1.0));
        }
        out.push_back(below("inv.limit.circular_reproducing", worst, 1e-9, t0));
    }
    {  // det_alpha multilinearity and permutation covariance.
        const auto t0 = Clock::now();
        RngStream rng({707, 0});
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 3 + trial % 3;
            Eigen::MatrixXd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -1.0, 1.0);
            const double alpha = uniform(rng, -1.5, 1.5);
            const double base = alpha_det_cycles(alpha, a);
            const double c = uniform(rng, 0.5, 2.0);
            Eigen::MatrixXd scaled = a;
            scaled.row(trial % n) *= c;
            worst = std::max(worst, std::abs(alpha_det_cycles(alpha, scaled) - c * base));

            Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
            perm.setIdentity();
            for (int i = n - 1; i > 0; --i) {
                const int j = static_cast<int>(uniform(rng, 0.0, i + 0.999));
                std::swap(perm.indices()[i], perm.indices()[j]);
            }
            const Eigen::MatrixXd conjugated = perm * a * perm.transpose();
            worst = std::max(worst, std::abs(alpha_det_cycles(alpha, conjugated) - base));
        }
        out.push_back(below("inv.alpha.multilinearity_covariance", worst, 1e-11, t0));
    }
    {  // Boundedness of alpha correlations in [0, 1].
        const auto t0 = Clock::now();
        RngStream rng({808, 0});
        double worst = -1.0;
        for (int trial = 0; trial < 200; ++trial) {
            const int m = 1 + trial % 4;
            const int n = 2 + trial % 6;
            std::vector<double> pts(n);
            for (double& p : pts) p = uniform(rng, -6.0, 6.0);
            const double rho =
                alpha_corr(AlphaParam::process(-1.0 / m), LimitKernel::scaled_sine(m), pts);
            worst = std::max(worst, std::max(-rho, rho - 1.0));
        }
        out.push_back(below("inv.alpha.correlations_in_unit_interval", worst, 1e-12, t0));
    }
    {  // rho3 closed form vs det_alpha on 500 random triples.
        const auto t0 = Clock::now();
        RngStream rng({909, 0});
        const LimitKernel kernel = LimitKernel::scaled_sine(2);
        const AlphaParam half = AlphaParam::process(-0.5);
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const std::vector<double> pts{uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0),
                                          uniform(rng, -5.0, 5.0)};
            worst = std::max(worst, std::abs(rho3_limit_half(pts[0], pts[1], pts[2]) -
                                             alpha_corr(half, kernel, pts)));
        }
        out.push_back(below("inv.stats.rho3_identity", worst, 1e-12, t0));
    }
    {  // Poisson limit of the pair statistics.
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double s = 20.0 * i / 100;
            worst = std::max(worst, std::abs(rho2_limit(-1e-3, s) - 1.0));
        }
        const double sk = structure_factor(-1e-3, 1.0);  // fixed k far above the kink
        worst = std::max(worst, std::abs(sk - 1.0));
        out.push_back(below("inv.stats.poisson_limit", worst, 1.1e-3, t0));
    }
    {  // Bulk number variance agrees with the alpha formula for scaled sine.
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (int m = 1; m <= 3; ++m)
            for (double l : {0.5, 2.0, 10.0})
                worst = std::max(worst,
                                 std::abs(number_variance_bulk(LimitKernel::scaled_sine(m), l) -
                                          number_variance_alpha(-1.0 / m, l)));
        out.push_back(below("inv.stats.nv_bulk_alpha_consistency", worst, 1e-8, t0));
    }
    {  // Sine-kernel number variance is increasing, concave at large L.
        const auto t0 = Clock::now();
        std::vector<double> values;
        for (int i = 0; i <= 20; ++i) values.push_back(number_variance_alpha(-1.0, 1.0 + i));
        bool ok = true;
        for (std::size_t i = 1; i < values.size(); ++i) ok = ok && values[i] > values[i - 1];
        for (std::size_t i = 1; i + 1 < values.size(); ++i)
            ok = ok && (values[i + 1] - 2 * values[i] + values[i - 1]) < 1e-12;
        out.push_back(line("inv.stats.nv_monotone_concave", ok ? 0.0 : 1.0, 0.0, ok, t0));
    }
    {  // CUE nearest-neighbour repulsion against the Poisson benchmark.
        const auto t0 = Clock::now();
        const DppSampler cue(FourierBasis{20});
        const auto samples = sample_replicates(cue, {21, 0}, 10000, 1);
        double below_fifth = 0.0, total = 0.0;
        const double mean_spacing = 2.0 * kPi / 20.0;
        for (const PointSample& s : samples) {
            for (std::size_t i = 0; i + 1 < s.positions.size(); ++i) {
                const double gap = (s.positions[i + 1] - s.positions[i]) / mean_spacing;
                total += 1.0;
                if (gap < 0.2) below_fifth += 1.0;
            }
        }
        const double fraction = below_fifth / total;
        const double poisson_fraction = 1.0 - std::exp(-0.2);
        out.push_back(below("inv.sampler.cue_level_repulsion", fraction,
                            poisson_fraction / 5.0, t0));
    }
    {  // Hermite sampler parity: empirical mean consistent with zero.
        const auto t0 = Clock::now();
        const BlockSpec gs({{0.0, 1.0}}, 10);
        const DppSampler sampler(HermiteBasis{gs});
        const auto samples = sample_replicates(sampler, {31, 0}, 4000, 1);
        double sum = 0.0, sumsq = 0.0, count = 0.0;
        for (const PointSample& s : samples)
            for (double p : s.positions) {
                sum += p;
                sumsq += p * p;
                count += 1.0;
            }
        const double mean = sum / count;
        const double se = std::sqrt((sumsq / count - mean * mean) / count);
        out.push_back(below("inv.sampler.parity_mean", std::abs(mean), 4.0 * se, t0));
    }

    return out;
}

}  // namespace

int acceptance_criteria_count() { return 15; }

std::vector<VerifyResult> run_acceptance_criterion(int criterion, int threads) {
    const auto t0 = Clock::now();
    std::vector<VerifyResult> out;
    switch (criterion) {
        case 1: out = crit1(); break;
        case 2: out = crit2(); break;
        case 3: out = crit3(); break;
        case 4: out = crit4(); break;
        case 5: out = crit5(); break;
        case 6: out = crit6(); break;
        case 7: out = crit7(); break;
        case 8: out = crit8(); break;
        case 9: out = crit9(); break;
        case 10: out = crit10(); break;
        case 11: out = crit11(); break;
        case 12: out = crit12(); break;
        case 13: out = crit13(threads); break;
        case 14: out = crit14(threads); break;
        case 15: out = crit15(); break;
        default: throw std::invalid_argument("run_acceptance_criterion: criterion out of range");
    }
    // Wall-clock budgets attached to some criteria.
    double budget = 0.0;
    switch (criterion) {
        case 1: budget = 10.0; break;
        case 2: budget = 30.0; break;
        case 3: budget = 20.0; break;
        case 12:
        case 13:
        case 14: budget = 300.0; break;
        default: break;
    }
    if (budget > 0.0) {
        const double total = elapsed(t0);
        out.push_back({"c" + std::to_string(criterion) + ".runtime_seconds", total, budget,
                       total <= budget, total});
    }
    return out;
}

std::vector<VerifyResult> run_invariant_suite() { return invariants(); }

std::vector<VerifyResult> run_verification(bool quick, int threads) {
    std::vector<VerifyResult> out;
    for (int c = 1; c <= acceptance_criteria_count(); ++c) {
        auto results = run_acceptance_criterion(c, threads);
        out.insert(out.end(), results.begin(), results.end());
    }
    if (!quick) {
        auto inv = run_invariant_suite();
        out.insert(out.end(), inv.begin(), inv.end());
    }
    return out;
}

}  // namespace blockdpp
