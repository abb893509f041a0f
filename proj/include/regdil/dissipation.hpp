#pragma once

#include <string_view>
#include <vector>

#include "regdil/linalg.hpp"
#include "regdil/semigroup.hpp"
#include "regdil/subset.hpp"

namespace regdil {

/// Relative certification tolerance: |beta| <= tol * (1 + max_i ||A_i||)
/// is reported as inconclusive.
inline constexpr double kCertificationTol = 1e-8;

/// Absolute certification threshold for a family.
double certification_tolerance(const GeneratorFamily& fam, double rel_tol = kCertificationTol);

struct DissipationEntry {
    Subset k;
    ComplexMatrix op;  // S_{T,K} as computed (not symmetrized)
    HermitianSpectrumSummary spectrum;
};

/// Dissipation operators for every K subset of {1..d}, indexed by bitmask.
struct DissipationTable {
    std::size_t d = 0;
    std::vector<DissipationEntry> entries;
    double beta = 0.0;
    Subset argmin;  // smallest bitmask attaining beta
    double tolerance = 0.0;
    bool dissipative = false;        // beta >= -tolerance
    bool super_dissipative = false;  // beta > tolerance

    const DissipationEntry& operator[](Subset k) const { return entries[k.mask()]; }
};

/// A^-(C) = prod_{i in C} (-A_i), ascending index order; identity for C empty.
ComplexMatrix negated_product(const GeneratorFamily& fam, Subset c);

/// S_{T,K u {a}} = -1/2 (A_a* S_{T,K} + S_{T,K} A_a), extending each K by
/// its largest index. Levels of equal |K| are computed in parallel.
/// Throws DimensionBudgetExceeded for d > kMaxGenerators.
DissipationTable dissipation_recursive(const GeneratorFamily& fam,
                                       double rel_tol = kCertificationTol);

/// Brute-force partition sum 2^-|K| sum_{(C1,C2)} A^-(C1)* A^-(C2).
ComplexMatrix dissipation_oracle(const GeneratorFamily& fam, Subset k);

/// Finite-difference approximant
/// (2t)^-|K| sum_{(C1,C2)} prod_{C1} (1 - T_i(t)*) prod_{C2} (1 - T_j(t)),
/// which converges in norm to S_{T,K} as t -> 0. Throws NonpositiveTime.
ComplexMatrix finite_difference_dissipation(const GeneratorFamily& fam, Subset k, double t);

struct BetaResult {
    double beta = 0.0;
    Subset argmin;
};

BetaResult beta(const GeneratorFamily& fam);

enum class Verdict { regularly_dilatable, not_regularly_dilatable, inconclusive };

std::string_view to_string(Verdict verdict) noexcept;

struct Certificate {
    Verdict verdict = Verdict::inconclusive;
    double beta = 0.0;
    Subset argmin;
    double certification_tol = 0.0;  // absolute threshold on |beta|
    double relative_tol = kCertificationTol;
    double hermiticity_tol = kHermiticityTol;
    std::size_t d = 0;
    std::vector<std::pair<Subset, double>> per_k;  // (K, min_eig) in mask order
    std::string note;
};

Certificate certify(const GeneratorFamily& fam, double rel_tol = kCertificationTol);
Certificate certify(const DissipationTable& table);

/// prod_{i in K} (-Re A_i), valid when all of {A_i, A_i*} commute.
/// Throws NotStronglyCommuting otherwise.
ComplexMatrix strong_commuting_product_formula(const GeneratorFamily& fam, Subset k);

}  // namespace regdil
