#include "regdil/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "regdil/error.hpp"

namespace regdil {
namespace {

void require_finite(const ComplexMatrix& m) {
    if (m.empty()) throw Error(ErrorCode::DimensionMismatch, "matrix has dimension 0");
    if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "matrix contains NaN or Inf");
}

double hermiticity_defect(const ComplexMatrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) acc += std::norm(m(i, j) - std::conj(m(j, i)));
    return std::sqrt(acc);
}

double checked_defect(const ComplexMatrix& m) {
    require_finite(m);
    const double defect = hermiticity_defect(m);
    const double limit = kHermiticityTol * (1.0 + m.frobenius_norm());
    if (defect > limit) {
        throw Error(ErrorCode::NonHermitian, "||M - M*|| = " + std::to_string(defect) +
                                                 " exceeds " + std::to_string(limit));
    }
    return defect;
}

std::vector<double> symmetric_eigenvalues(const ComplexMatrix& m) {
    ComplexMatrix work = m.hermitian_part();
    const auto n = static_cast<lapack_int>(m.dim());
    std::vector<double> eig(m.dim());
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n, work.data().data(), n, eig.data());
    if (info != 0) throw Error(ErrorCode::LapackFailure, "zheevd info=" + std::to_string(info));
    return eig;
}

// Bound on ||M||_2 that avoids an SVD for the common case.
double cheap_norm_bound(const ComplexMatrix& m) {
    return std::min(m.frobenius_norm(), std::sqrt(m.norm_1() * m.norm_inf()));
}

// Pade(13) numerator coefficients, Higham (2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

ComplexMatrix solve(ComplexMatrix lhs, ComplexMatrix rhs) {
    const auto n = static_cast<lapack_int>(lhs.dim());
    std::vector<lapack_int> ipiv(lhs.dim());
    const lapack_int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, n, lhs.data().data(), n, ipiv.data(),
                                          rhs.data().data(), n);
    if (info != 0) throw Error(ErrorCode::LapackFailure, "zgesv info=" + std::to_string(info));
    return rhs;
}

}  // namespace

double HermitianSpectrumSummary::norm() const noexcept {
    return std::max(std::abs(min_eig), std::abs(max_eig));
}

HermitianSpectrumSummary herm_min_eig(const ComplexMatrix& m) {
    const double defect = checked_defect(m);
    const std::vector<double> eig = symmetric_eigenvalues(m);
    return {eig.front(), eig.back(), defect};
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& m) {
    checked_defect(m);
    return symmetric_eigenvalues(m);
}

PsdCheck is_psd(const ComplexMatrix& m, double tol) {
    PsdCheck out;
    out.summary = herm_min_eig(m);
    out.threshold = -tol * (1.0 + out.summary.norm());
    out.psd = out.summary.min_eig >= out.threshold;
    return out;
}

ComplexMatrix expm(const ComplexMatrix& m) {
    require_finite(m);
    const std::size_t n = m.dim();
    // exp(0) = 1 exactly; the Pade solve would round it.
    if (m.max_abs() == 0.0) return ComplexMatrix::identity(n);
    double bound = cheap_norm_bound(m);
    if (bound > kExpmNormLimit) {
        bound = spectral_norm(m);
        if (bound > kExpmNormLimit) {
            throw Error(ErrorCode::NormTooLarge,
                        "||M|| = " + std::to_string(bound) + " exceeds the expm envelope");
        }
    }

    const double norm1 = m.norm_1();
    int squarings = 0;
    if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    ComplexMatrix a = m * std::ldexp(1.0, -squarings);

    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;
    const auto& b = kPade13;

    ComplexMatrix inner_u = a6 * b[13];
    inner_u.add_scaled(b[11], a4).add_scaled(b[9], a2);
    ComplexMatrix u_tail = eye * b[1];
    u_tail.add_scaled(b[3], a2).add_scaled(b[5], a4).add_scaled(b[7], a6);
    ComplexMatrix u = a * (a6 * inner_u + u_tail);

    ComplexMatrix inner_v = a6 * b[12];
    inner_v.add_scaled(b[10], a4).add_scaled(b[8], a2);
    ComplexMatrix v = a6 * inner_v;
    v.add_scaled(b[6], a6).add_scaled(b[4], a4).add_scaled(b[2], a2).add_scaled(b[0], eye);

    ComplexMatrix result = solve(v - u, v + u);
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    require_finite(m);
    ComplexMatrix work = m;
    const auto n = static_cast<lapack_int>(m.dim());
    std::vector<double> sv(m.dim());
    std::vector<double> superb(m.dim() > 1 ? m.dim() - 1 : 1);
    const lapack_int info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'N', n, n, work.data().data(), n,
                                           sv.data(), nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw Error(ErrorCode::LapackFailure, "zgesvd info=" + std::to_string(info));
    return sv;
}

double spectral_norm(const ComplexMatrix& m) { return singular_values(m).front(); }

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_finite(m);
    ComplexMatrix work = m;
    const auto n = static_cast<lapack_int>(m.dim());
    std::vector<lapack_int> ipiv(m.dim());
    lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, work.data().data(), n, ipiv.data());
    if (info > 0) throw Error(ErrorCode::SingularGenerator, "exactly singular matrix");
    if (info == 0) info = LAPACKE_zgetri(LAPACK_ROW_MAJOR, n, work.data().data(), n, ipiv.data());
    if (info != 0) throw Error(ErrorCode::LapackFailure, "zgetri info=" + std::to_string(info));
    return work;
}

}  // namespace regdil
