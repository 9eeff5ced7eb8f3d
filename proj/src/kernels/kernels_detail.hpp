#pragma once

// Shared constants and scalar cores for the row kernels. The AVX2 variant
// replays exactly these operation sequences lane-wise, so both paths stay
// bit-identical; keep any change mirrored in kernels_avx2.cpp.

#include <cmath>
#include <cstdint>

#include "qnet/kernels/kernels.hpp"
#include "qnet/rng.hpp"

namespace qnet::kern::detail {

// Cephes-style expansion of e^x: x = n*ln2 + r, e^r via a rational
// approximation in r^2, then scale by 2^n through the exponent bits.
inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;
inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;
inline constexpr double kExpLowCut = -708.0;  // below: result is 0

inline double exp_neg_core(double x) noexcept {
    if (!(x > kExpLowCut)) return 0.0;  // underflow cut; -inf lands here too
    const double k = std::floor(kLog2E * x + 0.5);
    const int n = static_cast<int>(k);
    double r = x - k * kLn2Hi;
    r = r - k * kLn2Lo;
    const double rr = r * r;
    const double p = r * ((kExpP0 * rr + kExpP1) * rr + kExpP2);
    const double q = (((kExpQ0 * rr + kExpQ1) * rr + kExpQ2) * rr + kExpQ3);
    const double e = 1.0 + 2.0 * (p / (q - p));
    // 2^n with n in [-1022, 1]; built directly from the exponent field.
    std::uint64_t bits = static_cast<std::uint64_t>(n + 1023) << 52;
    double scale;
    __builtin_memcpy(&scale, &bits, sizeof scale);
    return e * scale;
}

// Link decision for one pair. u = 52-bit uniform in [0,1);
// connect iff u < Pi = 1 - (1-p)^n_p, tested as (1-p)^n_p < 1-u so that a
// zero-probability link never fires even when u == 0.
inline bool link_decision(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t j,
                          double p_trial, std::uint32_t n_p) noexcept {
    const double u = pair_u01(pair_seed, i, j);
    const double q = 1.0 - p_trial;
    return ipow(q, n_p) < 1.0 - u;
}

inline void sbqi_row_scalar(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                            const double* psat, std::uint32_t n_p,
                            std::vector<std::uint32_t>& out) {
    const double pi = psat[i];
    for (std::uint32_t j = i + 1; j < n; ++j) {
        if (link_decision(pair_seed, i, j, pi * psat[j], n_p)) out.push_back(j);
    }
}

inline void ofbqi_row_scalar(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                             const double* xs, const double* ys, double lambda_per_km,
                             std::uint32_t n_p, std::vector<std::uint32_t>& out) {
    const double xi = xs[i];
    const double yi = ys[i];
    for (std::uint32_t j = i + 1; j < n; ++j) {
        const double dx = xi - xs[j];
        const double dy = yi - ys[j];
        const double d = std::sqrt(dx * dx + dy * dy);
        const double p = exp_neg_core(-lambda_per_km * d);
        if (link_decision(pair_seed, i, j, p, n_p)) out.push_back(j);
    }
}

inline void bernoulli_row_scalar(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                                 double edge_prob, std::vector<std::uint32_t>& out) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
        if (link_decision(pair_seed, i, j, edge_prob, 1)) out.push_back(j);
    }
}

inline void exp_neg_batch_scalar(const double* x, double* y, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) y[k] = exp_neg_core(x[k]);
}

}  // namespace qnet::kern::detail
