#include "regdil/kernels.hpp"

#include <algorithm>

namespace regdil::kernels {
namespace {

void gemm_scalar(std::size_t n, cplx alpha, const cplx* a, Op op_a, const cplx* b, cplx beta,
                 cplx* c) {
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = c + i * n;
        if (beta == cplx{0.0, 0.0}) {
            std::fill(crow, crow + n, cplx{});
        } else if (beta != cplx{1.0, 0.0}) {
            for (std::size_t j = 0; j < n; ++j) crow[j] *= beta;
        }
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = op_a == Op::none ? a[i * n + k] : std::conj(a[k * n + i]);
            const cplx s = alpha * aik;
            const cplx* brow = b + k * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += s * brow[j];
        }
    }
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    for (std::size_t k = 0; k < len; ++k) y[k] += alpha * x[k];
}

double norm2_sq_scalar(std::size_t len, const cplx* x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < len; ++k) acc += std::norm(x[k]);
    return acc;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{Isa::scalar, &gemm_scalar, &axpy_scalar, &norm2_sq_scalar};
    return table;
}

}  // namespace regdil::kernels
