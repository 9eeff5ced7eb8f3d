#include <cstdlib>
#include <string>

#include "qnet/errors.hpp"
#include "qnet/kernels/kernels.hpp"

namespace qnet::kern {

#if defined(QNET_HAVE_AVX2)
const RowKernels* avx2_kernels_impl() noexcept;  // kernels_avx2.cpp
#endif

const RowKernels* avx2_kernels() noexcept {
#if defined(QNET_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return avx2_kernels_impl();
#endif
    return nullptr;
}

const RowKernels& active_kernels() {
    static const RowKernels* const chosen = []() -> const RowKernels* {
        const char* env = std::getenv("QNET_KERNEL");
        const std::string req = env != nullptr ? env : "auto";
        if (req == "scalar") return &scalar_kernels();
        if (req == "avx2") {
            if (const RowKernels* k = avx2_kernels()) return k;
            fail(Errc::unsupported, "QNET_KERNEL=avx2 requested but AVX2 is unavailable");
        }
        if (req != "auto" && !req.empty()) {
            fail(Errc::unsupported, "unknown QNET_KERNEL value: " + req);
        }
        if (const RowKernels* k = avx2_kernels()) return k;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace qnet::kern
