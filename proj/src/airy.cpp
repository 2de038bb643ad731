// Copyright 2026 The blockdpp Authors
// SPDX-License-Identifier: Apache-2.0

#include "blockdpp/airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockdpp {

namespace {

// Ai(0) = 3^(-2/3)/Gamma(2/3) and -Ai'(0) = 3^(-1/3)/Gamma(1/3).
constexpr long double kC1 = 0.35502805388781723926006318600418317640L;
constexpr long double kC2 = 0.25881940379280679840518356018920396348L;

// Maclaurin series of the two ODE solutions f, g with y'' = x y,
// accumulated in extended precision to tame the cancellation between
// the c1*f and c2*g branches on the negative axis.
AiryValue airy_series(double x) {
    const long double lx = x;
    const long double x3 = lx * lx * lx;
    long double tf = 1.0L;       // a_{3k} x^{3k}
    long double tg = lx;         // b_{3k+1} x^{3k+1}
    long double f = tf, g = tg;
    long double fp = 0.0L, gp = 1.0L;  // gp: (3k+1) b x^{3k}, k=0 term = 1
    for (int k = 1; k < 300; ++k) {
        const long double k3 = 3.0L * k;
        tf *= x3 / ((k3 - 1.0L) * k3);
        tg *= x3 / (k3 * (k3 + 1.0L));
        f += tf;
        g += tg;
        fp += k3 * tf / lx;
        gp += (k3 + 1.0L) * tg / lx;
        if (std::abs(tf) + std::abs(tg) <
            1e-22L * (std::abs(f) + std::abs(g) + 1.0L))
            break;
    }
    return {static_cast<double>(kC1 * f - kC2 * g),
            static_cast<double>(kC1 * fp - kC2 * gp)};
}

// Poincare coefficients u_k and v_k of the large-|x| expansions.
void uv_coefficients(int kmax, long double* u, long double* v) {
    u[0] = 1.0L;
    v[0] = 1.0L;
    for (int k = 1; k <= kmax; ++k) {
        u[k] = u[k - 1] * (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
               (216.0L * k * (2.0L * k - 1.0L));
        v[k] = u[k] * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
    }
}

AiryValue airy_asymptotic_positive(double x) {
    constexpr int kMax = 20;
    long double u[kMax + 1], v[kMax + 1];
    uv_coefficients(kMax, u, v);
    const long double zeta = (2.0L / 3.0L) * std::pow((long double)x, 1.5L);
    long double su = 0.0L, sv = 0.0L, pw = 1.0L;
    long double prev = 1e300L;
    for (int k = 0; k <= kMax; ++k) {
        const long double tu = u[k] * pw;
        if (std::abs(tu) > prev) break;  // past the optimal truncation point
        su += (k % 2 ? -tu : tu);
        sv += (k % 2 ? -v[k] * pw : v[k] * pw);
        prev = std::abs(tu);
        pw /= zeta;
    }
    const long double root4 = std::pow((long double)x, 0.25L);
    const long double pref = std::exp(-zeta) / (2.0L * std::sqrt((long double)std::numbers::pi));
    return {static_cast<double>(pref / root4 * su),
            static_cast<double>(-pref * root4 * sv)};
}

AiryValue airy_asymptotic_negative(double x) {
    constexpr int kMax = 30;
    long double u[kMax + 1], v[kMax + 1];
    uv_coefficients(kMax, u, v);
    const long double z = -(long double)x;
    const long double zeta = (2.0L / 3.0L) * std::pow(z, 1.5L);
    const long double w = zeta - (long double)std::numbers::pi / 4.0L;
    long double se = 0.0L, so = 0.0L, sve = 0.0L, svo = 0.0L;
    long double prev = 1e300L;
    for (int k = 0; 2 * k + 1 <= kMax; ++k) {
        const long double pe = std::pow(zeta, -2.0L * k);
        const long double te = u[2 * k] * pe;
        if (std::abs(te) > prev) break;
        const int sgn = (k % 2) ? -1 : 1;
        se += sgn * te;
        so += sgn * u[2 * k + 1] * pe / zeta;
        sve += sgn * v[2 * k] * pe;
        svo += sgn * v[2 * k + 1] * pe / zeta;
        prev = std::abs(te);
    }
    const long double root4 = std::pow(z, 0.25L);
    const long double sp = std::sqrt((long double)std::numbers::pi);
    const long double cw = std::cos(w), sw = std::sin(w);
    return {static_cast<double>((cw * se + sw * so) / (sp * root4)),
            static_cast<double>(root4 / sp * (sw * sve - cw * svo))};
}

}  // namespace

AiryValue airy(double x) {
    if (!(x >= kAiryMin && x <= kAiryMax))
        throw std::domain_error("airy: argument outside the accurate range [-20, 10]");
    if (x > kAirySeriesMax) return airy_asymptotic_positive(x);
    if (x < kAirySeriesMin) return airy_asymptotic_negative(x);
    if (x == 0.0)
        return {static_cast<double>(kC1), static_cast<double>(-kC2)};
    return airy_series(x);
}

}  // namespace blockdpp
