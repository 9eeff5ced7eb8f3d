#include "kernels_detail.hpp"

namespace qnet::kern {

double exp_neg(double x) noexcept { return detail::exp_neg_core(x); }

const RowKernels& scalar_kernels() noexcept {
    static const RowKernels k = {
        "scalar",
        &detail::sbqi_row_scalar,
        &detail::ofbqi_row_scalar,
        &detail::bernoulli_row_scalar,
        &detail::exp_neg_batch_scalar,
    };
    return k;
}

}  // namespace qnet::kern
