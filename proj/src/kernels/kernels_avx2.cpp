// AVX2 row kernels. Every lane replays the scalar operation sequence from
// kernels_detail.hpp with the same constants and no FMA contraction, so the
// outputs are bit-identical to the scalar reference (asserted by tests).

#if defined(__AVX2__)

#include <immintrin.h>

#include "kernels_detail.hpp"

namespace qnet::kern {
namespace {

using detail::kExpLowCut;
using detail::kExpP0;
using detail::kExpP1;
using detail::kExpP2;
using detail::kExpQ0;
using detail::kExpQ1;
using detail::kExpQ2;
using detail::kExpQ3;
using detail::kLn2Hi;
using detail::kLn2Lo;
using detail::kLog2E;

// 64x64 -> low 64 multiply from 32-bit partial products.
inline __m256i mullo64(__m256i a, __m256i b) {
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i ah = _mm256_srli_epi64(a, 32);
    const __m256i bh = _mm256_srli_epi64(b, 32);
    const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(ah, b), _mm256_mul_epu32(a, bh));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64_vec(__m256i z) {
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 30));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 27));
    z = mullo64(z, _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBULL)));
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    return z;
}

// (bits >> 12) as an exact double in [0, 2^52), times 2^-52.
inline __m256d u01_vec(__m256i bits) {
    const __m256i mant = _mm256_srli_epi64(bits, 12);
    const __m256i expo = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52
    const __m256d shifted = _mm256_castsi256_pd(_mm256_or_si256(mant, expo));
    const __m256d value = _mm256_sub_pd(shifted, _mm256_set1_pd(0x1.0p52));
    return _mm256_mul_pd(value, _mm256_set1_pd(0x1.0p-52));
}

// Uniform variates for pairs (i, j), (i, j+1), (i, j+2), (i, j+3).
inline __m256d pair_u01_vec(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t j) {
    const __m256i hi = _mm256_set1_epi64x(static_cast<long long>(static_cast<std::uint64_t>(i) << 32));
    const __m256i jv = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(j)),
                                        _mm256_set_epi64x(3, 2, 1, 0));
    const __m256i key = _mm256_or_si256(hi, jv);
    const __m256i z = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(pair_seed)),
                                       mullo64(key, _mm256_set1_epi64x(static_cast<long long>(kGolden))));
    return u01_vec(mix64_vec(z));
}

inline __m256d exp_neg_vec(__m256d x) {
    const __m256d k = _mm256_floor_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kLog2E), x), _mm256_set1_pd(0.5)));
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Hi)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(k, _mm256_set1_pd(kLn2Lo)));
    const __m256d rr = _mm256_mul_pd(r, r);
    __m256d p = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kExpP0), rr), _mm256_set1_pd(kExpP1));
    p = _mm256_add_pd(_mm256_mul_pd(p, rr), _mm256_set1_pd(kExpP2));
    p = _mm256_mul_pd(r, p);
    __m256d q = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kExpQ0), rr), _mm256_set1_pd(kExpQ1));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr), _mm256_set1_pd(kExpQ2));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr), _mm256_set1_pd(kExpQ3));
    const __m256d e = _mm256_add_pd(
        _mm256_set1_pd(1.0),
        _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_div_pd(p, _mm256_sub_pd(q, p))));

    const __m128i n32 = _mm256_cvtpd_epi32(k);  // k is integral; conversion exact in range
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    const __m256d scaled = _mm256_mul_pd(e, _mm256_castsi256_pd(bits));

    const __m256d live = _mm256_cmp_pd(x, _mm256_set1_pd(kExpLowCut), _CMP_GT_OQ);
    return _mm256_and_pd(scaled, live);
}

inline __m256d ipow_vec(__m256d base, std::uint32_t e) {
    __m256d r = _mm256_set1_pd(1.0);
    __m256d b = base;
    while (e != 0) {
        if (e & 1u) r = _mm256_mul_pd(r, b);
        b = _mm256_mul_pd(b, b);
        e >>= 1;
    }
    return r;
}

// qn < 1 - u, one bit per lane.
inline int link_mask(__m256d p_trial, __m256d u, std::uint32_t n_p) {
    const __m256d q = _mm256_sub_pd(_mm256_set1_pd(1.0), p_trial);
    const __m256d qn = ipow_vec(q, n_p);
    const __m256d thr = _mm256_sub_pd(_mm256_set1_pd(1.0), u);
    return _mm256_movemask_pd(_mm256_cmp_pd(qn, thr, _CMP_LT_OQ));
}

inline void emit(int mask, std::uint32_t j, std::vector<std::uint32_t>& out) {
    for (int b = 0; b < 4; ++b) {
        if (mask & (1 << b)) out.push_back(j + static_cast<std::uint32_t>(b));
    }
}

void sbqi_row_avx2(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                   const double* psat, std::uint32_t n_p, std::vector<std::uint32_t>& out) {
    const __m256d pi = _mm256_set1_pd(psat[i]);
    std::uint32_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
        const __m256d pj = _mm256_loadu_pd(psat + j);
        const __m256d u = pair_u01_vec(pair_seed, i, j);
        emit(link_mask(_mm256_mul_pd(pi, pj), u, n_p), j, out);
    }
    for (; j < n; ++j) {
        if (detail::link_decision(pair_seed, i, j, psat[i] * psat[j], n_p)) out.push_back(j);
    }
}

void ofbqi_row_avx2(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                    const double* xs, const double* ys, double lambda_per_km,
                    std::uint32_t n_p, std::vector<std::uint32_t>& out) {
    const __m256d xi = _mm256_set1_pd(xs[i]);
    const __m256d yi = _mm256_set1_pd(ys[i]);
    const __m256d neg_lambda = _mm256_set1_pd(-lambda_per_km);
    std::uint32_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
        const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs + j));
        const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(ys + j));
        const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        const __m256d p = exp_neg_vec(_mm256_mul_pd(neg_lambda, d));
        const __m256d u = pair_u01_vec(pair_seed, i, j);
        emit(link_mask(p, u, n_p), j, out);
    }
    for (; j < n; ++j) {
        const double dx = xs[i] - xs[j];
        const double dy = ys[i] - ys[j];
        const double d = std::sqrt(dx * dx + dy * dy);
        const double p = detail::exp_neg_core(-lambda_per_km * d);
        if (detail::link_decision(pair_seed, i, j, p, n_p)) out.push_back(j);
    }
}

void bernoulli_row_avx2(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                        double edge_prob, std::vector<std::uint32_t>& out) {
    const __m256d p = _mm256_set1_pd(edge_prob);
    std::uint32_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
        const __m256d u = pair_u01_vec(pair_seed, i, j);
        emit(link_mask(p, u, 1), j, out);
    }
    for (; j < n; ++j) {
        if (detail::link_decision(pair_seed, i, j, edge_prob, 1)) out.push_back(j);
    }
}

void exp_neg_batch_avx2(const double* x, double* y, std::size_t count) {
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        _mm256_storeu_pd(y + k, exp_neg_vec(_mm256_loadu_pd(x + k)));
    }
    for (; k < count; ++k) y[k] = detail::exp_neg_core(x[k]);
}

}  // namespace

const RowKernels* avx2_kernels_impl() noexcept {
    static const RowKernels k = {
        "avx2",
        &sbqi_row_avx2,
        &ofbqi_row_avx2,
        &bernoulli_row_avx2,
        &exp_neg_batch_avx2,
    };
    return &k;
}

}  // namespace qnet::kern

#endif  // __AVX2__
