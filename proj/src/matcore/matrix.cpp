#include "regdil/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "regdil/error.hpp"
#include "regdil/kernels.hpp"

namespace regdil {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorCode::DimensionMismatch, "entry count does not match dim*dim");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) { return scalar(dim, 1.0); }

ComplexMatrix ComplexMatrix::scalar(std::size_t dim, cplx value) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = value;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        out(i, i) = (*this)(i, i).real();
        for (std::size_t j = i + 1; j < dim_; ++j) {
            const cplx v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::skew_part() const {
    ComplexMatrix out(dim_);
    const cplx half_over_i{0.0, -0.5};
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            out(i, j) = half_over_i * ((*this)(i, j) - std::conj((*this)(j, i)));
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::active().norm2_sq(data_.size(), data_.data()));
}

double ComplexMatrix::norm_1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) col += std::abs((*this)(i, j));
        best = std::max(best, col);
    }
    return best;
}

double ComplexMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const cplx& z : data_) best = std::max(best, std::abs(z));
    return best;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

namespace {
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operand dimensions differ");
}
}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) { return add_scaled(1.0, other); }

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) { return add_scaled(-1.0, other); }

ComplexMatrix& ComplexMatrix::operator*=(cplx factor) {
    for (cplx& z : data_) z *= factor;
    return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx factor, const ComplexMatrix& other) {
    require_same_dim(*this, other);
    kernels::active().axpy(data_.size(), factor, other.data_.data(), data_.data());
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }
ComplexMatrix operator*(ComplexMatrix m, cplx factor) { return m *= factor; }
ComplexMatrix operator*(cplx factor, ComplexMatrix m) { return m *= factor; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs);
    ComplexMatrix out(lhs.dim());
    kernels::active().gemm(lhs.dim(), 1.0, lhs.data().data(), kernels::Op::none, rhs.data().data(),
                           0.0, out.data().data());
    return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs, rhs);
    ComplexMatrix out(lhs.dim());
    kernels::active().gemm(lhs.dim(), 1.0, lhs.data().data(), kernels::Op::adjoint,
                           rhs.data().data(), 0.0, out.data().data());
    return out;
}

ComplexMatrix congruence(const ComplexMatrix& x, const ComplexMatrix& m) {
    return adjoint_times(x, m * x);
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace regdil
