// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace blockdpp {

/// Harmonic-oscillator eigenfunctions psi_k, orthonormal in L2(R, dx) with
/// Schroedinger eigenvalue k + 1/2:
///   psi_0(x) = (2 pi)^(-1/4) exp(-x^2/4),
///   psi_{k+1} = (x psi_k - sqrt(k) psi_{k-1}) / sqrt(k+1).
/// The recurrence runs on (mantissa, base-2 exponent) pairs so that levels up
/// to k ~ 1e6 are reachable even where the Gaussian seed underflows a double;
/// the returned double underflows to 0 deep in the classically forbidden
/// region, which is accepted behaviour.
double psi(std::int64_t k, double x);

/// psi_k'(x) = sqrt(k) psi_{k-1}(x) - (x/2) psi_k(x).
double psi_prime(std::int64_t k, double x);

/// Scaled representation: true value = mantissa * 2^exponent.
struct ScaledValue {
    double mantissa;
    std::int64_t exponent;
};

/// psi_k(x) for every k in [0, kmax], one recurrence sweep.
std::vector<ScaledValue> hermite_scaled_sweep(std::int64_t kmax, double x);

/// Scaled triple (psi_{n-2}, psi_{n-1}, psi_n) at one Christoffel-Darboux
/// boundary level n: true value = mantissa * 2^exponent. n = 0 gives zeros.
struct CdTriple {
    double below2 = 0.0;  // psi_{n-2}
    double below1 = 0.0;  // psi_{n-1}
    double at = 0.0;      // psi_n
    std::int64_t exponent = 0;
};

/// One recurrence sweep collecting CD triples at each requested level.
/// `levels` must be sorted ascending; entries may repeat.
std::vector<CdTriple> hermite_cd_triples(std::span<const std::int64_t> levels, double x);

}  // namespace blockdpp
