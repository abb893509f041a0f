#pragma once

// Inner-loop kernels for complex dense arithmetic.
//
// Each kernel has a portable scalar reference implementation and, where the
// target supports it, an AVX2+FMA variant. The variant is picked once at
// startup from CPUID (override with REGDIL_ISA=scalar|avx2) and can be
// switched at runtime for equivalence testing.

#include <complex>
#include <cstddef>
#include <string_view>

namespace regdil::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

enum class Op { none, adjoint };

struct KernelTable {
    Isa isa;
    /// C = alpha * op(A) * B + beta * C for n x n row-major matrices.
    /// When beta == 0, C is not read.
    void (*gemm)(std::size_t n, cplx alpha, const cplx* a, Op op_a, const cplx* b, cplx beta,
                 cplx* c);
    /// y += alpha * x
    void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
    /// sum_k |x_k|^2
    double (*norm2_sq)(std::size_t len, const cplx* x);
};

const KernelTable& scalar_table() noexcept;
/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;

/// Table used by ComplexMatrix arithmetic.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;
/// Returns false (and leaves the selection unchanged) if the ISA is not
/// available on this CPU/binary.
bool select(Isa isa) noexcept;

}  // namespace regdil::kernels
