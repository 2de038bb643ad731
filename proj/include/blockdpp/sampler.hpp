// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "blockdpp/block_spec.hpp"
#include "blockdpp/stats.hpp"

namespace blockdpp {

/// Deterministic counter-seeded RNG stream: identical (seed, stream) gives an
/// identical draw sequence regardless of execution parallelism.
struct RngContract {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// xoshiro-free minimal generator: splitmix64 state walk, which is enough for
/// Monte Carlo at desk scale and is stable across standard libraries.
class RngStream {
 public:
    explicit RngStream(RngContract contract);

    std::uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

 private:
    std::uint64_t state_;
};

enum class SampleDomain { line, circle };

/// One sampled configuration: sorted positions, domain tag, seed metadata.
struct PointSample {
    std::vector<double> positions;
    SampleDomain domain = SampleDomain::line;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t replicate_index = 0;

    std::size_t n() const { return positions.size(); }
};

/// Hermite level-set basis on the line (the block projection process).
struct HermiteBasis {
    BlockSpec spec;
};

/// Fourier basis e^(i k theta), k = 0..n-1, on the circle: the CUE(n)
/// eigenphase process with kernel S_n.
struct FourierBasis {
    std::int64_t n;
};

using ProjectionBasis = std::variant<HermiteBasis, FourierBasis>;

/// Exact sequential sampler for the projection DPP of a basis. Conditional
/// densities are sampled by rejection against a piecewise-constant envelope
/// of the diagonal K(t,t) built on a 4096-cell grid; cells whose observed
/// rejection rate exceeds 90% are split (locally per replicate, so a fixed
/// (seed, stream) always reproduces the same sample). Throws on envelope
/// violation or a rejection stall beyond 1e6 trials.
///
/// Construction does the envelope work; replicate sweeps should construct
/// once and call sample() per stream.
class DppSampler {
 public:
    explicit DppSampler(const ProjectionBasis& basis);

    PointSample sample(RngContract rng) const;
    std::int64_t points_per_sample() const;
    SampleDomain domain() const;

 private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// One-shot convenience wrapper around DppSampler.
PointSample sample_projection_dpp(const ProjectionBasis& basis, RngContract rng);

/// `count` replicates with streams base.stream + r, optionally spread over a
/// thread pool. The result is ordered by replicate and bit-identical for any
/// thread count. `superposition` > 1 draws unions of that many copies.
std::vector<PointSample> sample_replicates(const DppSampler& sampler, RngContract base,
                                           int count, int threads = 1,
                                           int superposition = 1);

/// Union of m independent copies (sub-streams rng.stream * 2^20 + g).
PointSample sample_superposition(int m, const DppSampler& sampler, RngContract rng);
PointSample sample_superposition(int m, const ProjectionBasis& basis, RngContract rng);

/// theta -> m theta mod 2pi, re-sorted. Circle-domain samples only.
PointSample power_map(const PointSample& sample, int m);

/// Count of envelope cells (exposed for tests).
inline constexpr int kEnvelopeCells = 4096;

/// Histogram density estimate normalized to expected count per replicate,
/// with per-bin standard errors.
StatSeries estimate_density(std::span<const PointSample> samples, double lo, double hi,
                            int bins);

/// Unit-density-rescaled pair correlation from separations inside a centered
/// window of the given half-width (line) or the whole circle.
StatSeries estimate_pair_correlation(std::span<const PointSample> samples,
                                     double window_halfwidth, double max_separation,
                                     int bins);

/// Sample variance of counts in centered boxes of each length, with jackknife
/// standard errors.
StatSeries estimate_number_variance(std::span<const PointSample> samples,
                                    std::span<const double> box_lengths);

}  // namespace blockdpp
