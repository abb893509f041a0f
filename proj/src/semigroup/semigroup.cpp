#include "regdil/semigroup.hpp"

#include <algorithm>
#include <string>

#include "regdil/error.hpp"
#include "regdil/linalg.hpp"

namespace regdil {

TimePoint positive_part(const TimePoint& t) {
    TimePoint out(t.size());
    std::transform(t.begin(), t.end(), out.begin(), [](double x) { return std::max(x, 0.0); });
    return out;
}

TimePoint negative_part(const TimePoint& t) {
    TimePoint out(t.size());
    std::transform(t.begin(), t.end(), out.begin(), [](double x) { return std::max(-x, 0.0); });
    return out;
}

TimePoint scaled_indicator(std::size_t d, Subset c, double t) {
    TimePoint out(d, 0.0);
    for (std::size_t i : c.indices()) out[i] = t;
    return out;
}

namespace {

CommutationReport pairwise_report(const std::vector<ComplexMatrix>& ops, double tol,
                                  std::size_t index_divisor) {
    CommutationReport report;
    std::vector<double> norms;
    norms.reserve(ops.size());
    for (const auto& op : ops) norms.push_back(spectral_norm(op));
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            const double abs_norm = spectral_norm(commutator(ops[i], ops[j]));
            const double rel = abs_norm / ((1.0 + norms[i]) * (1.0 + norms[j]));
            if (rel > report.max_relative_defect) {
                report.max_relative_defect = rel;
                report.worst_norm = abs_norm;
                report.worst_i = i / index_divisor;
                report.worst_j = j / index_divisor;
            }
        }
    }
    report.passes = report.max_relative_defect <= tol;
    return report;
}

}  // namespace

CommutationReport commutation_report(const GeneratorFamily& fam, double tol) {
    return pairwise_report(fam.generators, tol, 1);
}

CommutationReport validate_commuting(const GeneratorFamily& fam, double tol) {
    CommutationReport report = commutation_report(fam, tol);
    if (!report.passes) {
        throw Error(ErrorCode::CommutationViolation,
                    "generators " + std::to_string(report.worst_i + 1) + " and " +
                        std::to_string(report.worst_j + 1) + " have commutator norm " +
                        std::to_string(report.worst_norm) + " (relative " +
                        std::to_string(report.max_relative_defect) + ")");
    }
    return report;
}

CommutationReport strong_commutation_report(const GeneratorFamily& fam, double tol) {
    // Interleave A_0, A_0*, A_1, A_1*, ... so that index / 2 recovers the generator.
    std::vector<ComplexMatrix> ops;
    ops.reserve(2 * fam.d());
    for (const auto& a : fam.generators) {
        ops.push_back(a);
        ops.push_back(a.adjoint());
    }
    return pairwise_report(ops, tol, 2);
}

void validate_family(const GeneratorFamily& fam, double tol) {
    if (fam.d() == 0) throw Error(ErrorCode::BadParameters, "family has no generators");
    if (fam.d() > kMaxGenerators) {
        throw Error(ErrorCode::DimensionBudgetExceeded,
                    "d = " + std::to_string(fam.d()) + " exceeds " + std::to_string(kMaxGenerators));
    }
    const std::size_t n = fam.dim();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "generator dimension is 0");
    for (std::size_t i = 0; i < fam.d(); ++i) {
        if (fam[i].dim() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "generator " + std::to_string(i + 1) + " has dimension " +
                            std::to_string(fam[i].dim()) + ", expected " + std::to_string(n));
        }
        if (!fam[i].all_finite()) {
            throw Error(ErrorCode::NonFinite, "generator " + std::to_string(i + 1) + " has NaN/Inf");
        }
    }
    validate_commuting(fam, tol);
}

ComplexMatrix evaluate(const GeneratorFamily& fam, const TimePoint& t) {
    if (t.size() != fam.d()) {
        throw Error(ErrorCode::DimensionMismatch, "time vector length " + std::to_string(t.size()) +
                                                      " differs from d = " + std::to_string(fam.d()));
    }
    ComplexMatrix exponent(fam.dim());
    for (std::size_t i = 0; i < fam.d(); ++i) {
        if (t[i] < 0.0) throw Error(ErrorCode::NegativeTime, "t_" + std::to_string(i + 1) + " < 0");
        if (t[i] != 0.0) exponent.add_scaled(t[i], fam[i]);
    }
    return expm(exponent);
}

ComplexMatrix marginal(const GeneratorFamily& fam, std::size_t index, double t) {
    if (index >= fam.d()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(index + 1) + " outside 1.." + std::to_string(fam.d()));
    }
    if (t < 0.0) throw Error(ErrorCode::NegativeTime, "marginal time < 0");
    return expm(fam[index] * t);
}

std::vector<double> generator_norms(const GeneratorFamily& fam) {
    std::vector<double> out;
    out.reserve(fam.d());
    for (const auto& a : fam.generators) out.push_back(spectral_norm(a));
    return out;
}

}  // namespace regdil
