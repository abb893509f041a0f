#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regdil/matrix.hpp"
#include "regdil/subset.hpp"

namespace regdil {

/// Relative commutator tolerance: ||AB - BA|| <= tol * (1+||A||)(1+||B||).
inline constexpr double kCommutationTol = 1e-10;

/// d commuting bounded generators A_1..A_d of a d-parameter semigroup
/// T(t) = exp(sum_i t_i A_i) on C^n.
struct GeneratorFamily {
    std::vector<ComplexMatrix> generators;
    std::string label;

    std::size_t d() const noexcept { return generators.size(); }
    std::size_t dim() const noexcept { return generators.empty() ? 0 : generators.front().dim(); }
    const ComplexMatrix& operator[](std::size_t i) const { return generators[i]; }

    bool operator==(const GeneratorFamily&) const = default;
};

/// Time vector; entries may be negative in regular-evaluation contexts.
using TimePoint = std::vector<double>;

TimePoint positive_part(const TimePoint& t);
/// Entrywise max(-t_i, 0), so t = t+ - t-.
TimePoint negative_part(const TimePoint& t);
/// t * e_C: t on the coordinates in C, 0 elsewhere.
TimePoint scaled_indicator(std::size_t d, Subset c, double t);

struct CommutationReport {
    double max_relative_defect = 0.0;
    /// Absolute commutator norm of the worst pair.
    double worst_norm = 0.0;
    std::size_t worst_i = 0;
    std::size_t worst_j = 0;
    bool passes = true;
};

/// Pairwise commutator norms, no throwing.
CommutationReport commutation_report(const GeneratorFamily& fam, double tol = kCommutationTol);
/// Throws CommutationViolation naming the offending pair.
CommutationReport validate_commuting(const GeneratorFamily& fam, double tol = kCommutationTol);

/// Like commutation_report, over the enlarged set {A_i, A_i*} (which also
/// covers normality of each A_i).
CommutationReport strong_commutation_report(const GeneratorFamily& fam, double tol = kCommutationTol);

/// Full input validation: d >= 1, d <= kMaxGenerators, shared square
/// dimension, finite entries, pairwise commuting.
void validate_family(const GeneratorFamily& fam, double tol = kCommutationTol);

/// T(t) = exp(sum t_i A_i). Throws NegativeTime, DimensionMismatch, NormTooLarge.
ComplexMatrix evaluate(const GeneratorFamily& fam, const TimePoint& t);

/// T_i(t) = exp(t A_i). Throws IndexOutOfRange, NegativeTime.
ComplexMatrix marginal(const GeneratorFamily& fam, std::size_t index, double t);

/// Spectral norms ||A_i||.
std::vector<double> generator_norms(const GeneratorFamily& fam);

// ---------------------------------------------------------------------------
// Example families.

enum class ZooKind { diagonal_normal, single_matrix_polynomials, triangular_counterexample };

std::string_view to_string(ZooKind kind) noexcept;
std::optional<ZooKind> parse_zoo_kind(std::string_view name) noexcept;

enum class IsometryChoice { identity_embedding, random };

struct ZooSpec {
    ZooKind kind = ZooKind::diagonal_normal;
    std::size_t d = 2;
    std::uint64_t seed = 1;

    // diagonal_normal / single_matrix_polynomials
    std::size_t dim = 2;
    // diagonal_normal: real parts drawn from [real_lo, real_hi], imaginary
    // parts from [-imag_scale, imag_scale].
    double real_lo = -2.0;
    double real_hi = 0.0;
    double imag_scale = 2.0;
    /// Conjugate every diagonal generator by one shared random unitary.
    bool random_basis = false;

    // single_matrix_polynomials
    std::size_t degree = 2;
    /// After the dissipative shift, A_i <- A_i - margin * 1.
    double margin = 0.0;

    // triangular_counterexample: H = H1 (+) H2, D_i = alpha V_i : H2 -> H1.
    std::size_t dim1 = 1;
    std::size_t dim2 = 1;
    cplx alpha = 0.8;
    IsometryChoice isometry = IsometryChoice::identity_embedding;
    /// Require 1/sqrt(d) < |alpha| < 1/sqrt(d-1). When false only
    /// 0 < |alpha| <= 1 (contractive D_i) is required.
    bool enforce_alpha_window = true;
};

/// Throws BadParameters for violated ZooSpec constraints.
GeneratorFamily make_zoo(const ZooSpec& spec);

/// Mixed test corpus of `count` validated families (d <= 4, dim <= 16),
/// deterministic in `seed`.
std::vector<GeneratorFamily> build_corpus(std::uint64_t seed, std::size_t count);

}  // namespace regdil
