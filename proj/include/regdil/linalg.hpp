#pragma once

#include <vector>

#include "regdil/matrix.hpp"

namespace regdil {

/// Relative tolerance on ||M - M*|| before a matrix is accepted as Hermitian.
inline constexpr double kHermiticityTol = 1e-8;
/// Default relative PSD tolerance: min_eig >= -tol * (1 + ||M||).
inline constexpr double kPsdTol = 1e-9;
/// expm accuracy envelope on the spectral norm of its argument.
inline constexpr double kExpmNormLimit = 64.0;

struct HermitianSpectrumSummary {
    double min_eig = 0.0;
    double max_eig = 0.0;
    /// Frobenius norm of M - M* of the input, before symmetrization.
    double hermiticity_defect = 0.0;

    /// Spectral norm of the symmetrized matrix.
    double norm() const noexcept;
};

/// Extremal eigenvalues of (M + M*)/2.
/// Throws NonFinite, or NonHermitian when the defect exceeds
/// kHermiticityTol * (1 + ||M||_F).
HermitianSpectrumSummary herm_min_eig(const ComplexMatrix& m);

/// All eigenvalues of (M + M*)/2 in ascending order (same checks as above).
std::vector<double> herm_eigenvalues(const ComplexMatrix& m);

struct PsdCheck {
    bool psd = false;
    HermitianSpectrumSummary summary;
    /// The threshold min_eig was compared against (negative).
    double threshold = 0.0;
};

PsdCheck is_psd(const ComplexMatrix& m, double tol = kPsdTol);

/// Matrix exponential (scaling and squaring with a degree-13 Pade core).
/// Throws NormTooLarge when ||M||_2 > kExpmNormLimit.
ComplexMatrix expm(const ComplexMatrix& m);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Throws SingularGenerator if LU factorization breaks down.
ComplexMatrix inverse(const ComplexMatrix& m);

}  // namespace regdil
