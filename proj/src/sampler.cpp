// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "blockdpp/hermite.hpp"
#include "blockdpp/kernel.hpp"

namespace blockdpp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::uint64_t kSuperpositionStride = 1u << 20;
constexpr long kMaxTrials = 1000000;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(RngContract contract) {
    // Decorrelate seed and stream through independent splitmix walks.
    std::uint64_t s = contract.seed;
    const std::uint64_t a = splitmix64(s);
    s = contract.stream ^ 0x5851f42d4c957f2dULL;
    const std::uint64_t b = splitmix64(s);
    state_ = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

struct EnvelopeCell {
    double lo;
    double hi;
    double bound;
};

// Piecewise-constant dominating function for the diagonal K(t, t). Every
// conditional density of the sequential sampler is bounded by the diagonal,
// so one envelope serves all N draws.
struct Envelope {
    std::vector<EnvelopeCell> cells;
    std::vector<double> cumulative;

    void rebuild() {
        cumulative.resize(cells.size());
        double run = 0.0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            run += cells[i].bound * (cells[i].hi - cells[i].lo);
            cumulative[i] = run;
        }
    }

    double total_mass() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

double cell_bound(const std::function<double(double)>& diag, double lo, double hi,
                  double floor_value) {
    double peak = 0.0;
    constexpr int kProbes = 17;
    for (int i = 0; i < kProbes; ++i) {
        const double t = lo + (hi - lo) * i / (kProbes - 1);
        peak = std::max(peak, diag(t));
    }
    return 1.3 * peak + floor_value;
}

Envelope build_envelope(const std::function<double(double)>& diag, double lo, double hi) {
    double global_peak = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double v = diag(lo + (hi - lo) * i / 256.0);
        if (v < -1e-10)
            throw std::runtime_error("sampler: envelope construction failed, density below -1e-10");
        global_peak = std::max(global_peak, v);
    }
    const double floor_value = 1e-12 * global_peak;
    Envelope env;
    env.cells.reserve(kEnvelopeCells);
    for (int c = 0; c < kEnvelopeCells; ++c) {
        const double a = lo + (hi - lo) * c / kEnvelopeCells;
        const double b = lo + (hi - lo) * (c + 1) / kEnvelopeCells;
        env.cells.push_back({a, b, cell_bound(diag, a, b, floor_value)});
    }
    env.rebuild();
    return env;
}

// Sequential conditional sampling for a projection kernel: draw a point from
// the current conditional diagonal, orthogonalize its feature vector out of
// the active subspace, repeat. Envelope refinements are applied to a local
// copy so the draw is a pure function of (envelope, rng stream).
template <typename Scalar, typename FeatureFn>
std::vector<double> sample_core(std::int64_t n_points, const FeatureFn& feature,
                                const std::function<double(double)>& diag,
                                const Envelope& base_envelope, RngStream& rng) {
    std::optional<Envelope> local;
    const Envelope* env = &base_envelope;
    std::unordered_map<std::size_t, std::pair<int, int>> counters;  // cell -> (trials, accepts)

    std::vector<Eigen::VectorX<Scalar>> ortho;
    ortho.reserve(static_cast<std::size_t>(n_points));
    std::vector<double> positions;
    positions.reserve(static_cast<std::size_t>(n_points));
    Eigen::VectorX<Scalar> phi, v;

    for (std::int64_t i = 0; i < n_points; ++i) {
        long trials = 0;
        while (true) {
            if (++trials > kMaxTrials)
                throw std::runtime_error(
                    "sampler: rejection stall after 1e6 trials at point " + std::to_string(i) +
                    " of " + std::to_string(n_points) + " (envelope mass " +
                    std::to_string(env->total_mass()) + ")");
            const double u = rng.next_double() * env->total_mass();
            std::size_t cell_idx = static_cast<std::size_t>(
                std::lower_bound(env->cumulative.begin(), env->cumulative.end(), u) -
                env->cumulative.begin());
            cell_idx = std::min(cell_idx, env->cells.size() - 1);
            const EnvelopeCell cell = env->cells[cell_idx];
            const double t = cell.lo + rng.next_double() * (cell.hi - cell.lo);

            feature(t, phi);
            const double norm2 = phi.squaredNorm();
            double g = norm2;
            for (const auto& uj : ortho) g -= std::norm(uj.dot(phi));
            if (g < -1e-10 * std::max(norm2, 1.0))
                throw std::runtime_error("sampler: conditional density negative beyond -1e-10");
            g = std::max(g, 0.0);
            if (g > cell.bound * (1.0 + 1e-9))
                throw std::runtime_error("sampler: envelope violated");

            auto& [cell_trials, cell_accepts] = counters[cell_idx];
            ++cell_trials;
            if (rng.next_double() * cell.bound <= g) {
                ++cell_accepts;
                positions.push_back(t);
                // Twice-iterated Gram-Schmidt keeps the residual basis orthonormal.
                v = phi;
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& uj : ortho) v -= uj.dot(v) * uj;
                const double vn = v.norm();
                if (!(vn > 0.0)) throw std::runtime_error("sampler: degenerate feature vector");
                ortho.push_back(v / vn);
                break;
            }

            // Split cells whose observed rejection rate exceeds 90%.
            if (cell_trials >= 128 && cell_accepts * 10 < cell_trials &&
                env->cells.size() < 4 * kEnvelopeCells) {
                if (!local) {
                    local = *env;
                    env = &*local;
                }
                const EnvelopeCell old = local->cells[cell_idx];
                const double q = (old.hi - old.lo) / 4.0;
                EnvelopeCell split[4];
                for (int s = 0; s < 4; ++s) {
                    const double a = old.lo + q * s;
                    const double b = (s == 3) ? old.hi : old.lo + q * (s + 1);
                    split[s] = {a, b, cell_bound(diag, a, b, 0.0)};
                }
                auto at = local->cells.begin() + static_cast<std::ptrdiff_t>(cell_idx);
                at = local->cells.erase(at);
                local->cells.insert(at, split, split + 4);
                local->rebuild();
                counters.clear();
            }
        }
    }
    std::sort(positions.begin(), positions.end());
    return positions;
}

}  // namespace

struct DppSampler::Impl {
    SampleDomain domain;
    std::int64_t n_points;

    // Line state
    std::optional<BlockSpec> spec;
    std::vector<std::int64_t> levels;

    // Circle state
    std::int64_t fourier_n = 0;

    Envelope envelope;

    double diag(double t) const {
        if (domain == SampleDomain::line) return density_finite(*spec, t);
        return static_cast<double>(fourier_n) / kTwoPi;
    }

    void line_feature(double t, Eigen::VectorXd& out) const {
        out.resize(static_cast<Eigen::Index>(levels.size()));
        const auto sweep = hermite_scaled_sweep(levels.back(), t);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& s = sweep[static_cast<std::size_t>(levels[i])];
            out[static_cast<Eigen::Index>(i)] =
                (s.exponent < -1200) ? 0.0 : std::ldexp(s.mantissa, static_cast<int>(s.exponent));
        }
    }

    void circle_feature(double t, Eigen::VectorXcd& out) const {
        out.resize(static_cast<Eigen::Index>(fourier_n));
        const double norm = 1.0 / std::sqrt(kTwoPi);
        for (std::int64_t k = 0; k < fourier_n; ++k)
            out[static_cast<Eigen::Index>(k)] = std::polar(norm, static_cast<double>(k) * t);
    }
};

DppSampler::DppSampler(const ProjectionBasis& basis) {
    auto impl = std::make_shared<Impl>();
    if (std::holds_alternative<HermiteBasis>(basis)) {
        const auto& hb = std::get<HermiteBasis>(basis);
        if (hb.spec.num_levels() > 200)
            throw std::invalid_argument("DppSampler: |J| > 200 is out of the desk-scale range");
        impl->domain = SampleDomain::line;
        impl->spec = hb.spec;
        impl->levels = hb.spec.levels();
        impl->n_points = hb.spec.num_levels();
        // Classically allowed region with 10% padding plus an Airy-tail
        // margin, so the proposal covers the quantum tails of small level sets.
        const double pad = 9.0 * std::pow(static_cast<double>(hb.spec.top_level()), -1.0 / 6.0);
        const double hi = hb.spec.support_edge() * 1.1 + pad;
        impl->envelope =
            build_envelope([&impl](double t) { return impl->diag(t); }, -hi, hi);
    } else {
        const auto& fb = std::get<FourierBasis>(basis);
        if (fb.n < 1 || fb.n > 200)
            throw std::invalid_argument("DppSampler: need 1 <= n <= 200");
        impl->domain = SampleDomain::circle;
        impl->fourier_n = fb.n;
        impl->n_points = fb.n;
        // K(t, t) = n / 2pi exactly; a single flat cell is already tight.
        impl->envelope.cells.push_back({0.0, kTwoPi, static_cast<double>(fb.n) / kTwoPi});
        impl->envelope.rebuild();
    }
    impl_ = std::move(impl);
}

std::int64_t DppSampler::points_per_sample() const { return impl_->n_points; }

SampleDomain DppSampler::domain() const { return impl_->domain; }

PointSample DppSampler::sample(RngContract rng) const {
    RngStream stream(rng);
    PointSample out;
    out.seed = rng.seed;
    out.stream = rng.stream;
    out.replicate_index = rng.stream;
    out.domain = impl_->domain;
    auto diag = [this](double t) { return impl_->diag(t); };
    if (impl_->domain == SampleDomain::line) {
        out.positions = sample_core<double>(
            impl_->n_points,
            [this](double t, Eigen::VectorXd& f) { impl_->line_feature(t, f); }, diag,
            impl_->envelope, stream);
    } else {
        out.positions = sample_core<std::complex<double>>(
            impl_->n_points,
            [this](double t, Eigen::VectorXcd& f) { impl_->circle_feature(t, f); }, diag,
            impl_->envelope, stream);
    }
    return out;
}

PointSample sample_projection_dpp(const ProjectionBasis& basis, RngContract rng) {
    return DppSampler(basis).sample(rng);
}

PointSample sample_superposition(int m, const DppSampler& sampler, RngContract rng) {
    if (m < 1) throw std::invalid_argument("sample_superposition: m must be >= 1");
    if (m == 1) return sampler.sample(rng);
    PointSample out;
    for (int g = 0; g < m; ++g) {
        RngContract sub{rng.seed,
                        rng.stream * kSuperpositionStride + static_cast<std::uint64_t>(g)};
        PointSample part = sampler.sample(sub);
        out.domain = part.domain;
        out.positions.insert(out.positions.end(), part.positions.begin(), part.positions.end());
    }
    out.seed = rng.seed;
    out.stream = rng.stream;
    out.replicate_index = rng.stream;
    std::sort(out.positions.begin(), out.positions.end());
    return out;
}

PointSample sample_superposition(int m, const ProjectionBasis& basis, RngContract rng) {
    return sample_superposition(m, DppSampler(basis), rng);
}

std::vector<PointSample> sample_replicates(const DppSampler& sampler, RngContract base,
                                           int count, int threads, int superposition) {
    if (count < 0) throw std::invalid_argument("sample_replicates: negative count");
    threads = std::max(1, threads);
    std::vector<PointSample> out(static_cast<std::size_t>(count));
    auto worker = [&](int start, int step) {
        for (int r = start; r < count; r += step) {
            const RngContract rng{base.seed, base.stream + static_cast<std::uint64_t>(r)};
            out[static_cast<std::size_t>(r)] =
                superposition > 1 ? sample_superposition(superposition, sampler, rng)
                                  : sampler.sample(rng);
            out[static_cast<std::size_t>(r)].replicate_index = static_cast<std::uint64_t>(r);
        }
    };
    if (threads == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (std::thread& t : pool) t.join();
    }
    return out;
}

PointSample power_map(const PointSample& sample, int m) {
    if (sample.domain != SampleDomain::circle)
        throw std::domain_error("power_map: requires a circle-domain sample");
    if (m < 1) throw std::invalid_argument("power_map: m must be >= 1");
    PointSample out = sample;
    for (double& theta : out.positions) {
        theta = std::fmod(static_cast<double>(m) * theta, kTwoPi);
        if (theta < 0.0) theta += kTwoPi;
    }
    std::sort(out.positions.begin(), out.positions.end());
    return out;
}

StatSeries estimate_density(std::span<const PointSample> samples, double lo, double hi,
                            int bins) {
    if (samples.empty()) throw std::invalid_argument("estimate_density: no samples");
    if (!(lo < hi) || bins < 1) throw std::invalid_argument("estimate_density: bad grid");
    const double width = (hi - lo) / bins;
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0);
    std::vector<double> counts(bins);
    for (const PointSample& s : samples) {
        std::fill(counts.begin(), counts.end(), 0.0);
        for (double p : s.positions) {
            if (p < lo || p >= hi) continue;
            ++counts[static_cast<std::size_t>((p - lo) / width)];
        }
        for (int b = 0; b < bins; ++b) {
            sum[b] += counts[b];
            sumsq[b] += counts[b] * counts[b];
        }
    }
    const double r = static_cast<double>(samples.size());
    StatSeries series;
    series.label = "density";
    series.x_unit = "position";
    for (int b = 0; b < bins; ++b) {
        series.x.push_back(lo + (b + 0.5) * width);
        series.y.push_back(sum[b] / (r * width));
        const double var = (sumsq[b] - sum[b] * sum[b] / r) / std::max(r - 1.0, 1.0);
        series.yerr.push_back(std::sqrt(std::max(var, 0.0) / r) / width);
    }
    return series;
}

StatSeries estimate_pair_correlation(std::span<const PointSample> samples,
                                     double window_halfwidth, double max_separation,
                                     int bins) {
    if (samples.empty()) throw std::invalid_argument("estimate_pair_correlation: no samples");
    for (const PointSample& s : samples)
        if (s.positions.size() < 2)
            throw std::invalid_argument("estimate_pair_correlation: needs >= 2 points per sample");
    const bool circle = samples.front().domain == SampleDomain::circle;

    // Mean density inside the window, used for the unit-density rescaling.
    double total = 0.0;
    for (const PointSample& s : samples) {
        if (circle) {
            total += static_cast<double>(s.positions.size());
        } else {
            for (double p : s.positions)
                if (std::abs(p) <= window_halfwidth) total += 1.0;
        }
    }
    const double window = circle ? kTwoPi : 2.0 * window_halfwidth;
    const double density = total / (static_cast<double>(samples.size()) * window);

    const double du = max_separation / bins;
    std::vector<double> sum(bins, 0.0), sumsq(bins, 0.0), counts(bins);
    for (const PointSample& s : samples) {
        std::fill(counts.begin(), counts.end(), 0.0);
        const auto& p = s.positions;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!circle && std::abs(p[i]) > window_halfwidth) continue;
            for (std::size_t j = i + 1; j < p.size(); ++j) {
                if (!circle && std::abs(p[j]) > window_halfwidth) continue;
                double sep = std::abs(p[j] - p[i]);
                if (circle) sep = std::min(sep, kTwoPi - sep);
                const double u = sep * density;
                if (u >= max_separation) continue;
                ++counts[static_cast<std::size_t>(u / du)];
            }
        }
        for (int b = 0; b < bins; ++b) {
            sum[b] += counts[b];
            sumsq[b] += counts[b] * counts[b];
        }
    }

    const double r = static_cast<double>(samples.size());
    StatSeries series;
    series.label = "pair_correlation";
    series.x_unit = "separation (mean spacings)";
    for (int b = 0; b < bins; ++b) {
        const double u_mid = (b + 0.5) * du;
        // Unordered-pair measure of the bin: (W - s) ds on the line, pi ds * 2
        // on the circle (both circular orders collapse onto |separation|).
        const double geometry =
            circle ? kTwoPi * (du / density) : (window - u_mid / density) * (du / density);
        const double norm = geometry * density * density;
        series.x.push_back(u_mid);
        series.y.push_back(sum[b] / (r * norm));
        const double var = (sumsq[b] - sum[b] * sum[b] / r) / std::max(r - 1.0, 1.0);
        series.yerr.push_back(std::sqrt(std::max(var, 0.0) / r) / norm);
    }
    return series;
}

StatSeries estimate_number_variance(std::span<const PointSample> samples,
                                    std::span<const double> box_lengths) {
    if (samples.size() < 3)
        throw std::invalid_argument("estimate_number_variance: needs >= 3 replicates");
    const bool circle = samples.front().domain == SampleDomain::circle;
    const double r = static_cast<double>(samples.size());

    StatSeries series;
    series.label = "number_variance";
    series.x_unit = "box length";
    std::vector<double> counts(samples.size());
    for (double box : box_lengths) {
        for (std::size_t si = 0; si < samples.size(); ++si) {
            double c = 0.0;
            for (double p : samples[si].positions) {
                const double d = circle ? std::min(p, kTwoPi - p) : std::abs(p);
                if (d <= 0.5 * box) c += 1.0;
            }
            counts[si] = c;
        }
        double s1 = 0.0, s2 = 0.0;
        for (double c : counts) {
            s1 += c;
            s2 += c * c;
        }
        const double var = (s2 - s1 * s1 / r) / (r - 1.0);

        // Delete-one jackknife over replicates.
        double jsum = 0.0, jsumsq = 0.0;
        for (double c : counts) {
            const double s1j = s1 - c, s2j = s2 - c * c;
            const double vj = (s2j - s1j * s1j / (r - 1.0)) / (r - 2.0);
            jsum += vj;
            jsumsq += vj * vj;
        }
        const double jmean = jsum / r;
        const double se = std::sqrt(std::max((r - 1.0) / r * (jsumsq - r * jmean * jmean), 0.0));

        series.x.push_back(box);
        series.y.push_back(var);
        series.yerr.push_back(se);
    }
    return series;
}

}  // namespace blockdpp
