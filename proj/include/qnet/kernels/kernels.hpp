#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qnet::kern {

// Hot inner loops of graph generation: for one row i, decide links to every
// j in (i, n). All variants of a kernel produce bit-identical results: the
// link test is u_ij < Pi_ij evaluated as ipow(1-p, n_p) < 1-u with a fixed
// operation order, and transcendentals go through exp_neg below rather than
// libm. Scalar versions are the reference; SIMD variants replay the same
// IEEE operation sequence per lane.
struct RowKernels {
    const char* name;

    // Satellite model: p_trial = psat[i] * psat[j].
    void (*sbqi_row)(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                     const double* psat, std::uint32_t n_p,
                     std::vector<std::uint32_t>& out);

    // Fiber model: p_trial = exp(-lambda_per_km * dist_km(i, j)).
    void (*ofbqi_row)(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                      const double* xs, const double* ys, double lambda_per_km,
                      std::uint32_t n_p, std::vector<std::uint32_t>& out);

    // Constant edge probability (Erdos-Renyi).
    void (*bernoulli_row)(std::uint64_t pair_seed, std::uint32_t i, std::uint32_t n,
                          double edge_prob, std::vector<std::uint32_t>& out);

    // Batch e^x for x <= 0 (exposed for equivalence tests).
    void (*exp_neg_batch)(const double* x, double* y, std::size_t count);
};

const RowKernels& scalar_kernels() noexcept;

// nullptr when the binary or the CPU lacks AVX2 support.
const RowKernels* avx2_kernels() noexcept;

// Best available kernel set; QNET_KERNEL=scalar|avx2|auto overrides.
// Throws Errc::unsupported if an explicitly requested variant is missing.
const RowKernels& active_kernels();

// Deterministic scalar e^x for x in [-708, 0] (0 below that), ~2 ulp.
double exp_neg(double x) noexcept;

// b^e by binary exponentiation; the multiply sequence depends only on e.
inline double ipow(double b, std::uint32_t e) noexcept {
    double r = 1.0;
    while (e != 0) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

}  // namespace qnet::kern
