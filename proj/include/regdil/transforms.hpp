#pragma once

#include <vector>

#include "regdil/dissipation.hpp"
#include "regdil/semigroup.hpp"

namespace regdil {

/// Per-coordinate shift amounts omega_1..omega_d.
using ShiftVector = std::vector<double>;

/// omega_K = prod_{i in K} omega_i (1 for K empty).
double subset_product(const ShiftVector& omega, Subset k);

/// Generators A_i - omega_i * 1, i.e. the semigroup e^{-<t, omega>} T(t).
GeneratorFamily shift(const GeneratorFamily& fam, const ShiftVector& omega);

struct SelfSimilarityReport {
    double max_residual = 0.0;  // max_K ||S'_K - sum_{K' subset K} omega_{K\K'} S_{K'}||
    Subset worst;
    /// (1 + ||omega||_inf^d) * max_K ||S_{T,K}||
    double scale = 0.0;
    std::vector<double> residual_per_k;
};

SelfSimilarityReport verify_shift_self_similarity(const GeneratorFamily& fam, const ShiftVector& omega);

/// Relative invertibility tolerance: sigma_min(A_i) >= tol * ||A_i||.
inline constexpr double kInvertibilityTol = 1e-8;

/// Replaces A_i by A_i^-1 for i in P. Throws SingularGenerator.
GeneratorFamily p_inversion(const GeneratorFamily& fam, Subset p);

struct ConjugationReport {
    double residual = 0.0;  // ||A^-(K&P)* S_{T_P,K} A^-(K&P) - S_{T,K}||
    double scale = 0.0;     // 1 + ||A^-(K&P)||^2 ||S_{T_P,K}|| + ||S_{T,K}||
};

ConjugationReport verify_inversion_conjugation(const GeneratorFamily& fam, Subset p, Subset k);

/// ||M - omega 1|| / omega. Throws NonpositiveOmega.
double circularity(const ComplexMatrix& m, double omega);

enum class NormVerdict { sufficient, indeterminate };

std::string_view to_string(NormVerdict verdict) noexcept;

struct DeviationRow {
    Subset k;
    double lhs = 0.0;  // ||S_{T,K} - omega_K 1|| / |omega_K|
    double rhs = 0.0;  // prod_{i in K} (1 + ||A_i + omega_i|| / |omega_i|) - 1
};

struct NormSufficiencyReport {
    NormVerdict verdict = NormVerdict::indeterminate;
    double threshold = 0.0;       // 2^{1/d} - 1
    std::vector<double> ratios;   // ||A_i + omega_i 1|| / omega_i
    std::vector<DeviationRow> deviations;
    bool deviation_bound_holds = true;  // lhs <= rhs + 1e-9 for all K
};

/// Sufficient condition for a regular unitary dilation; requires omega_i > 0.
NormSufficiencyReport norm_sufficiency_check(const GeneratorFamily& fam, const ShiftVector& omega);

struct MembershipReport {
    bool member = false;  // certificate is not NOT_REGULARLY_DILATABLE
    Certificate certificate;
};

MembershipReport regular_exponent_membership(const GeneratorFamily& fam, const ShiftVector& omega);

struct RegularExponentQuery {
    GeneratorFamily family;
    ShiftVector origin;      // empty = 0
    ShiftVector direction;   // empty = (1, ..., 1)
    double lo = 0.0;         // search over omega(s) = origin + s * direction, s in [lo, hi]
    double hi = 1.0;
    double tolerance = 1e-8;  // on |beta|
    int max_iterations = 200;
    /// Double the distance of `hi` from `lo` (up to 30 times) until beta(hi) > 0.
    bool expand_upper = false;
};

struct BoundaryReport {
    ShiftVector omega_boundary;
    double s_boundary = 0.0;
    double beta_at_boundary = 0.0;
    int iterations = 0;
    double hi_used = 0.0;
};

/// Bisection on s -> beta(shift(fam, omega(s))). Throws NoSignChange or
/// MaxIterations.
BoundaryReport boundary_bisect(const RegularExponentQuery& query);

/// prod_i (1 + 1/omega_i) < 1 + 1/|beta_T|: sufficient for the omega-shift
/// of a family with beta_T < 0 to be completely super dissipative.
bool shift_condition_for_super_dissipativity(double beta_t, const ShiftVector& omega);

struct BetaShiftBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Bounds on beta_{shift(omega)} - beta_T from the self-similarity identity,
/// taken subset by subset:
///   upper = max_K [prod_K (|w_i| + ||A_i||) - prod_K ||A_i||]
///   lower = -max_K [prod_K (|w_i| + ||A_i - w_i||) - prod_K ||A_i - w_i||]
BetaShiftBracket beta_shift_bracket(const GeneratorFamily& fam, const ShiftVector& omega);

/// The same bracket with only K = {1..d} in the maxima. Valid when all
/// generator norms (shifted and unshifted) are at least 1; can fail otherwise.
BetaShiftBracket beta_shift_bracket_full_product(const GeneratorFamily& fam, const ShiftVector& omega);

}  // namespace regdil
