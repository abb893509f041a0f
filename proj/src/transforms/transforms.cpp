#include "regdil/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "regdil/error.hpp"
#include "regdil/linalg.hpp"

namespace regdil {
namespace {

void check_length(const GeneratorFamily& fam, const ShiftVector& omega) {
    if (omega.size() != fam.d()) {
        throw Error(ErrorCode::DimensionMismatch, "shift vector has length " + std::to_string(omega.size()) +
                                                      ", expected d = " + std::to_string(fam.d()));
    }
    for (double w : omega) {
        if (!std::isfinite(w)) throw Error(ErrorCode::NonFinite, "shift vector entry is not finite");
    }
}

std::string describe(const ShiftVector& omega) {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t i = 0; i < omega.size(); ++i) os << (i ? "," : "") << omega[i];
    os << "]";
    return os.str();
}

}  // namespace

double subset_product(const ShiftVector& omega, Subset k) {
    double out = 1.0;
    for (std::size_t i : k.indices()) out *= omega[i];
    return out;
}

GeneratorFamily shift(const GeneratorFamily& fam, const ShiftVector& omega) {
    check_length(fam, omega);
    GeneratorFamily out = fam;
    for (std::size_t i = 0; i < fam.d(); ++i) {
        if (omega[i] == 0.0) continue;
        ComplexMatrix& a = out.generators[i];
        for (std::size_t j = 0; j < a.dim(); ++j) a(j, j) -= omega[i];
    }
    out.label = fam.label + " | shift " + describe(omega);
    return out;
}

SelfSimilarityReport verify_shift_self_similarity(const GeneratorFamily& fam, const ShiftVector& omega) {
    check_length(fam, omega);
    const DissipationTable base = dissipation_recursive(fam);
    const DissipationTable shifted = dissipation_recursive(shift(fam, omega));

    SelfSimilarityReport report;
    double max_s = 0.0;
    for (const auto& entry : base.entries) max_s = std::max(max_s, entry.spectrum.norm());
    double w_inf = 0.0;
    for (double w : omega) w_inf = std::max(w_inf, std::abs(w));
    report.scale = (1.0 + std::pow(w_inf, static_cast<double>(fam.d()))) * max_s;

    for (const auto& entry : shifted.entries) {
        ComplexMatrix expected(fam.dim());
        for (Subset sub : entry.k.subsets()) {
            expected.add_scaled(subset_product(omega, entry.k.minus(sub)), base[sub].op);
        }
        const double residual = (entry.op - expected).frobenius_norm();
        report.residual_per_k.push_back(residual);
        if (residual > report.max_residual) {
            report.max_residual = residual;
            report.worst = entry.k;
        }
    }
    return report;
}

GeneratorFamily p_inversion(const GeneratorFamily& fam, Subset p) {
    if (!p.fits(fam.d())) throw Error(ErrorCode::IndexOutOfRange, "inversion set exceeds generator count");
    GeneratorFamily out = fam;
    for (std::size_t i : p.indices()) {
        const std::vector<double> sv = singular_values(fam[i]);
        const double smallest = sv.back();
        if (smallest < kInvertibilityTol * sv.front() || smallest == 0.0) {
            throw Error(ErrorCode::SingularGenerator,
                        "generator " + std::to_string(i + 1) + " has smallest singular value " +
                            std::to_string(smallest));
        }
        out.generators[i] = inverse(fam[i]);
    }
    std::ostringstream os;
    os << fam.label << " | invert {";
    bool first = true;
    for (std::size_t i : p.indices()) {
        os << (first ? "" : ",") << i + 1;
        first = false;
    }
    os << "}";
    out.label = os.str();
    return out;
}

ConjugationReport verify_inversion_conjugation(const GeneratorFamily& fam, Subset p, Subset k) {
    if (!k.fits(fam.d())) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds generator count");
    const GeneratorFamily inverted = p_inversion(fam, p);
    const ComplexMatrix s_inv = dissipation_oracle(inverted, k);
    const ComplexMatrix s = dissipation_oracle(fam, k);
    const ComplexMatrix conj = negated_product(fam, k & p);
    const ComplexMatrix lhs = congruence(conj, s_inv);

    ConjugationReport report;
    report.residual = spectral_norm(lhs - s);
    const double c = spectral_norm(conj);
    report.scale = 1.0 + c * c * spectral_norm(s_inv) + spectral_norm(s);
    return report;
}

double circularity(const ComplexMatrix& m, double omega) {
    if (!(omega > 0.0)) throw Error(ErrorCode::NonpositiveOmega, "circularity needs omega > 0");
    ComplexMatrix dev = m;
    for (std::size_t j = 0; j < dev.dim(); ++j) dev(j, j) -= omega;
    return spectral_norm(dev) / omega;
}

std::string_view to_string(NormVerdict verdict) noexcept {
    return verdict == NormVerdict::sufficient ? "SUFFICIENT" : "INDETERMINATE";
}

NormSufficiencyReport norm_sufficiency_check(const GeneratorFamily& fam, const ShiftVector& omega) {
    check_length(fam, omega);
    for (double w : omega) {
        if (!(w > 0.0)) throw Error(ErrorCode::NonpositiveOmega, "norm criterion needs omega_i > 0");
    }
    NormSufficiencyReport report;
    report.threshold = std::exp2(1.0 / static_cast<double>(fam.d())) - 1.0;
    bool all_within = true;
    for (std::size_t i = 0; i < fam.d(); ++i) {
        // ||A_i + w 1|| / w is the circularity of -A_i.
        const double ratio = circularity(-fam[i], omega[i]);
        report.ratios.push_back(ratio);
        all_within = all_within && ratio <= report.threshold;
    }
    report.verdict = all_within ? NormVerdict::sufficient : NormVerdict::indeterminate;

    const DissipationTable table = dissipation_recursive(fam);
    for (const auto& entry : table.entries) {
        const double wk = subset_product(omega, entry.k);
        ComplexMatrix dev = entry.op.hermitian_part();
        for (std::size_t j = 0; j < dev.dim(); ++j) dev(j, j) -= wk;
        DeviationRow row{entry.k, spectral_norm(dev) / std::abs(wk), 1.0};
        for (std::size_t i : entry.k.indices()) row.rhs *= 1.0 + report.ratios[i];
        row.rhs -= 1.0;
        report.deviation_bound_holds = report.deviation_bound_holds && row.lhs <= row.rhs + 1e-9;
        report.deviations.push_back(row);
    }
    return report;
}

MembershipReport regular_exponent_membership(const GeneratorFamily& fam, const ShiftVector& omega) {
    MembershipReport report;
    report.certificate = certify(shift(fam, omega));
    report.member = report.certificate.verdict != Verdict::not_regularly_dilatable;
    return report;
}

BoundaryReport boundary_bisect(const RegularExponentQuery& query) {
    const GeneratorFamily& fam = query.family;
    const std::size_t d = fam.d();
    const ShiftVector origin = query.origin.empty() ? ShiftVector(d, 0.0) : query.origin;
    const ShiftVector direction = query.direction.empty() ? ShiftVector(d, 1.0) : query.direction;
    check_length(fam, origin);
    check_length(fam, direction);
    if (std::all_of(direction.begin(), direction.end(), [](double x) { return x == 0.0; })) {
        throw Error(ErrorCode::BadParameters, "direction must have a nonzero entry");
    }
    if (!(query.lo < query.hi) || !std::isfinite(query.lo) || !std::isfinite(query.hi)) {
        throw Error(ErrorCode::BadParameters, "search interval must be finite with lo < hi");
    }

    auto omega_at = [&](double s) {
        ShiftVector w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = origin[i] + s * direction[i];
        return w;
    };
    auto beta_at = [&](double s) { return beta(shift(fam, omega_at(s))).beta; };

    double lo = query.lo;
    double hi = query.hi;
    double f_lo = beta_at(lo);
    double f_hi = beta_at(hi);
    if (query.expand_upper) {
        for (int attempt = 0; attempt < 30 && f_hi <= 0.0 && f_lo <= 0.0; ++attempt) {
            hi = lo + 2.0 * (hi - lo);
            f_hi = beta_at(hi);
        }
    }
    BoundaryReport report;
    report.hi_used = hi;
    auto finish = [&](double s, double value, int iterations) {
        report.s_boundary = s;
        report.omega_boundary = omega_at(s);
        report.beta_at_boundary = value;
        report.iterations = iterations;
        return report;
    };
    if (std::abs(f_lo) <= query.tolerance) return finish(lo, f_lo, 0);
    if (std::abs(f_hi) <= query.tolerance) return finish(hi, f_hi, 0);
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw Error(ErrorCode::NoSignChange, "beta has the same sign at both ends (" + std::to_string(f_lo) +
                                                 ", " + std::to_string(f_hi) + ")");
    }
    for (int it = 1; it <= query.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = beta_at(mid);
        if (std::abs(f_mid) <= query.tolerance || hi - lo < 1e-12) return finish(mid, f_mid, it);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    throw Error(ErrorCode::MaxIterations, "bisection did not converge in " +
                                              std::to_string(query.max_iterations) + " iterations");
}

bool shift_condition_for_super_dissipativity(double beta_t, const ShiftVector& omega) {
    double prod = 1.0;
    for (double w : omega) {
        if (!(w > 0.0)) return false;
        prod *= 1.0 + 1.0 / w;
    }
    if (beta_t >= 0.0) return true;
    return prod < 1.0 + 1.0 / std::abs(beta_t);
}

namespace {

// max over K of prod_K (a_i + b_i) - prod_K b_i (K = all only when full_only).
double subset_gap(const std::vector<double>& a, const std::vector<double>& b, bool full_only) {
    const std::size_t d = a.size();
    const std::uint32_t count = std::uint32_t{1} << d;
    double best = 0.0;
    for (std::uint32_t mask = full_only ? count - 1 : 0; mask < count; ++mask) {
        double with = 1.0;
        double without = 1.0;
        for (std::size_t i : Subset{mask}.indices()) {
            with *= a[i] + b[i];
            without *= b[i];
        }
        best = std::max(best, with - without);
    }
    return best;
}

BetaShiftBracket bracket(const GeneratorFamily& fam, const ShiftVector& omega, bool full_only) {
    check_length(fam, omega);
    std::vector<double> abs_w(fam.d());
    std::transform(omega.begin(), omega.end(), abs_w.begin(), [](double w) { return std::abs(w); });
    const std::vector<double> norms = generator_norms(fam);
    const std::vector<double> shifted_norms = generator_norms(shift(fam, omega));
    return {-subset_gap(abs_w, shifted_norms, full_only), subset_gap(abs_w, norms, full_only)};
}

}  // namespace

BetaShiftBracket beta_shift_bracket(const GeneratorFamily& fam, const ShiftVector& omega) {
    return bracket(fam, omega, false);
}

BetaShiftBracket beta_shift_bracket_full_product(const GeneratorFamily& fam, const ShiftVector& omega) {
    return bracket(fam, omega, true);
}

}  // namespace regdil
