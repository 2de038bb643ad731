// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace blockdpp {

/// Value and first derivative of the Airy function Ai.
struct AiryValue {
    double ai;
    double ai_prime;
};

/// Accurate evaluation range of airy(); outside it a std::domain_error is thrown.
inline constexpr double kAiryMin = -20.0;
inline constexpr double kAiryMax = 10.0;

/// Documented switch points between the Maclaurin series and the asymptotic
/// expansions. The series is used on [kAirySeriesMin, kAirySeriesMax]; the
/// negative switch sits at -8 because the oscillatory expansion is not yet
/// accurate at -4.5 while the series still is.
inline constexpr double kAirySeriesMax = 4.5;
inline constexpr double kAirySeriesMin = -8.0;

/// Ai(x) and Ai'(x) with absolute error <= 1e-9 on [kAiryMin, kAiryMax].
AiryValue airy(double x);

}  // namespace blockdpp
