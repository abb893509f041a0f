// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "regdil/kernels.hpp"

#include <immintrin.h>

namespace regdil::kernels {
namespace {

// One __m256d holds two interleaved complex numbers (re0, im0, re1, im1).

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (s.re, s.im) * v for two packed complex values.
inline __m256d cmul_scalar(cplx s, __m256d v) {
    const __m256d sr = _mm256_set1_pd(s.real());
    const __m256d si = _mm256_set1_pd(s.imag());
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(sr, v), _mm256_mul_pd(si, swapped));
}

void gemm_avx2(std::size_t n, cplx alpha, const cplx* a, Op op_a, const cplx* b, cplx beta,
               cplx* c) {
    const std::size_t n_even = n & ~std::size_t{1};
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = c + i * n;
        for (std::size_t j = 0; j < n_even; j += 2) {
            // acc_r collects s.re * b, acc_i collects s.im * swap(b); addsub
            // at the end yields the complex product sum.
            __m256d acc_r = _mm256_setzero_pd();
            __m256d acc_i = _mm256_setzero_pd();
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = op_a == Op::none ? a[i * n + k] : std::conj(a[k * n + i]);
                const __m256d bv = load2(b + k * n + j);
                acc_r = _mm256_fmadd_pd(_mm256_set1_pd(aik.real()), bv, acc_r);
                acc_i = _mm256_fmadd_pd(_mm256_set1_pd(aik.imag()), _mm256_permute_pd(bv, 0b0101),
                                        acc_i);
            }
            __m256d prod = cmul_scalar(alpha, _mm256_addsub_pd(acc_r, acc_i));
            if (beta != cplx{0.0, 0.0}) prod = _mm256_add_pd(prod, cmul_scalar(beta, load2(crow + j)));
            store2(crow + j, prod);
        }
        if (n_even != n) {
            const std::size_t j = n - 1;
            cplx acc{};
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = op_a == Op::none ? a[i * n + k] : std::conj(a[k * n + i]);
                acc += aik * b[k * n + j];
            }
            crow[j] = alpha * acc + (beta != cplx{0.0, 0.0} ? beta * crow[j] : cplx{});
        }
    }
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
    std::size_t k = 0;
    for (; k + 2 <= len; k += 2) store2(y + k, _mm256_add_pd(load2(y + k), cmul_scalar(alpha, load2(x + k))));
    for (; k < len; ++k) y[k] += alpha * x[k];
}

double norm2_sq_avx2(std::size_t len, const cplx* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= len; k += 2) {
        const __m256d v = load2(x + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < len; ++k) total += std::norm(x[k]);
    return total;
}

}  // namespace

const KernelTable* avx2_table() noexcept {
    static const KernelTable table{Isa::avx2, &gemm_avx2, &axpy_avx2, &norm2_sq_avx2};
    return &table;
}

}  // namespace regdil::kernels
