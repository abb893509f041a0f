#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace regdil {

using cplx = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// All operators in the library live in this type. Products are routed
/// through the kernel table in kernels.hpp, so the active ISA (scalar or
/// AVX2) decides how the inner loops run.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);  // zero matrix
    ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix scalar(std::size_t dim, cplx value);
    static ComplexMatrix diagonal(std::span<const cplx> diag);

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx& operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    /// (M + M*)/2
    ComplexMatrix hermitian_part() const;
    /// (M - M*)/2i, so that M = Re M + i Im M.
    ComplexMatrix skew_part() const;

    double frobenius_norm() const;
    /// max row sum and max column sum; sqrt(norm_1 * norm_inf) bounds the spectral norm.
    double norm_1() const;
    double norm_inf() const;
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx factor);
    /// this += factor * other
    ComplexMatrix& add_scaled(cplx factor, const ComplexMatrix& other);

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx factor);
ComplexMatrix operator*(cplx factor, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// lhs* rhs without materializing the adjoint.
ComplexMatrix adjoint_times(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
/// X* M X
ComplexMatrix congruence(const ComplexMatrix& x, const ComplexMatrix& m);
/// A B - B A
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace regdil
