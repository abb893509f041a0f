#include "regdil/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regdil/error.hpp"
#include "regdil/parallel.hpp"

namespace regdil {

std::string_view to_string(Verdict verdict) noexcept {
    switch (verdict) {
        case Verdict::regularly_dilatable: return "REGULARLY_DILATABLE";
        case Verdict::not_regularly_dilatable: return "NOT_REGULARLY_DILATABLE";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

double certification_tolerance(const GeneratorFamily& fam, double rel_tol) {
    const std::vector<double> norms = generator_norms(fam);
    const double max_norm = norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
    return rel_tol * (1.0 + max_norm);
}

ComplexMatrix negated_product(const GeneratorFamily& fam, Subset c) {
    ComplexMatrix out = ComplexMatrix::identity(fam.dim());
    for (std::size_t i : c.indices()) out = out * (-fam[i]);
    return out;
}

namespace {

void check_budget(const GeneratorFamily& fam) {
    if (fam.d() > kMaxGenerators) {
        throw Error(ErrorCode::DimensionBudgetExceeded,
                    "d = " + std::to_string(fam.d()) + " exceeds " + std::to_string(kMaxGenerators));
    }
}

void finalize(DissipationTable& table) {
    table.beta = table.entries.front().spectrum.min_eig;
    table.argmin = Subset::empty();
    for (const auto& entry : table.entries) {
        if (entry.spectrum.min_eig < table.beta) {
            table.beta = entry.spectrum.min_eig;
            table.argmin = entry.k;
        }
    }
    table.dissipative = table.beta >= -table.tolerance;
    table.super_dissipative = table.beta > table.tolerance;
}

}  // namespace

DissipationTable dissipation_recursive(const GeneratorFamily& fam, double rel_tol) {
    check_budget(fam);
    const std::size_t d = fam.d();
    const std::size_t count = std::size_t{1} << d;

    DissipationTable table;
    table.d = d;
    table.tolerance = certification_tolerance(fam, rel_tol);
    table.entries.resize(count);

    std::vector<std::vector<Subset>> levels(d + 1);
    for (std::uint32_t mask = 0; mask < count; ++mask) levels[Subset{mask}.size()].emplace_back(mask);

    table.entries[0] = {Subset::empty(), ComplexMatrix::identity(fam.dim()), {1.0, 1.0, 0.0}};
    for (std::size_t level = 1; level <= d; ++level) {
        const auto& members = levels[level];
        parallel_for(members.size(), [&](std::size_t idx) {
            const Subset k = members[idx];
            const std::size_t top = k.highest();
            const ComplexMatrix& parent = table.entries[k.without(top).mask()].op;
            const ComplexMatrix& a = fam[top];
            ComplexMatrix s = adjoint_times(a, parent) + parent * a;
            s *= -0.5;
            HermitianSpectrumSummary spectrum = herm_min_eig(s);
            table.entries[k.mask()] = {k, std::move(s), spectrum};
        });
    }
    finalize(table);
    return table;
}

ComplexMatrix dissipation_oracle(const GeneratorFamily& fam, Subset k) {
    if (!k.fits(fam.d())) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds generator count");
    ComplexMatrix sum(fam.dim());
    for (const auto& [c1, c2] : k.partitions()) {
        sum += adjoint_times(negated_product(fam, c1), negated_product(fam, c2));
    }
    sum *= std::ldexp(1.0, -static_cast<int>(k.size()));
    return sum;
}

ComplexMatrix finite_difference_dissipation(const GeneratorFamily& fam, Subset k, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveTime, "finite-difference step must be > 0");
    if (!k.fits(fam.d())) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds generator count");
    const std::size_t n = fam.dim();
    const ComplexMatrix eye = ComplexMatrix::identity(n);

    std::vector<ComplexMatrix> gaps(fam.d());  // 1 - T_i(t)
    for (std::size_t i : k.indices()) gaps[i] = eye - marginal(fam, i, t);

    ComplexMatrix sum(n);
    for (const auto& [c1, c2] : k.partitions()) {
        ComplexMatrix left = eye;
        for (std::size_t i : c1.indices()) left = left * gaps[i];
        ComplexMatrix right = eye;
        for (std::size_t j : c2.indices()) right = right * gaps[j];
        // prod_{C1} (1 - T_i*) = (prod_{C1} (1 - T_i))* for commuting T_i.
        sum += adjoint_times(left, right);
    }
    sum *= std::pow(2.0 * t, -static_cast<double>(k.size()));
    return sum;
}

BetaResult beta(const GeneratorFamily& fam) {
    const DissipationTable table = dissipation_recursive(fam);
    return {table.beta, table.argmin};
}

Certificate certify(const DissipationTable& table) {
    Certificate cert;
    cert.beta = table.beta;
    cert.argmin = table.argmin;
    cert.certification_tol = table.tolerance;
    cert.d = table.d;
    cert.per_k.reserve(table.entries.size());
    for (const auto& entry : table.entries) cert.per_k.emplace_back(entry.k, entry.spectrum.min_eig);

    if (std::abs(table.beta) <= table.tolerance) {
        cert.verdict = Verdict::inconclusive;
        cert.note = "beta lies within the certification tolerance of 0; the family sits on the "
                    "boundary of complete dissipativity and no sign verdict is issued";
    } else if (table.beta > 0.0) {
        cert.verdict = Verdict::regularly_dilatable;
        cert.note = "completely super dissipative generators";
    } else {
        cert.verdict = Verdict::not_regularly_dilatable;
        cert.note = "dissipation operator for the argmin subset has a negative eigenvalue";
    }
    return cert;
}

Certificate certify(const GeneratorFamily& fam, double rel_tol) {
    Certificate cert = certify(dissipation_recursive(fam, rel_tol));
    cert.relative_tol = rel_tol;
    return cert;
}

ComplexMatrix strong_commuting_product_formula(const GeneratorFamily& fam, Subset k) {
    const CommutationReport report = strong_commutation_report(fam);
    if (!report.passes) {
        throw Error(ErrorCode::NotStronglyCommuting,
                    "{A_i, A_i*} fail to commute for generators " + std::to_string(report.worst_i + 1) +
                        " and " + std::to_string(report.worst_j + 1) + " (relative defect " +
                        std::to_string(report.max_relative_defect) + ")");
    }
    ComplexMatrix out = ComplexMatrix::identity(fam.dim());
    for (std::size_t i : k.indices()) out = out * (-fam[i].hermitian_part());
    return out;
}

}  // namespace regdil
