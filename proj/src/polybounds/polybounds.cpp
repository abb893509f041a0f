#include <algorithm>
#include <cmath>
#include <string>

#include "regdil/error.hpp"
#include "regdil/linalg.hpp"
#include "regdil/parallel.hpp"
#include "regdil/polybounds.hpp"

namespace regdil {

ComplexMatrix regular_evaluate(const GeneratorFamily& fam, const LaurentPolynomial& p, const TimePoint& t) {
    if (p.d() != fam.d()) {
        throw Error(ErrorCode::ArityMismatch, "polynomial has " + std::to_string(p.d()) + " variables, family has " +
                                                  std::to_string(fam.d()) + " generators");
    }
    if (t.size() != fam.d()) throw Error(ErrorCode::DimensionMismatch, "time point has wrong length");
    for (double ti : t) {
        if (ti < 0.0) throw Error(ErrorCode::NegativeTime, "regular evaluation needs t_i >= 0");
    }
    ComplexMatrix out(fam.dim());
    TimePoint nt(fam.d());
    for (const auto& [n, c] : p.terms()) {
        for (std::size_t i = 0; i < nt.size(); ++i) nt[i] = n[i] * t[i];
        const TimePoint minus = negative_part(nt);
        const TimePoint plus = positive_part(nt);
        const bool has_minus = std::any_of(minus.begin(), minus.end(), [](double x) { return x != 0.0; });
        const bool has_plus = std::any_of(plus.begin(), plus.end(), [](double x) { return x != 0.0; });
        if (!has_minus) {
            out.add_scaled(c, has_plus ? evaluate(fam, plus) : ComplexMatrix::identity(fam.dim()));
        } else if (!has_plus) {
            out.add_scaled(c, evaluate(fam, minus).adjoint());
        } else {
            out.add_scaled(c, adjoint_times(evaluate(fam, minus), evaluate(fam, plus)));
        }
    }
    return out;
}

BoundCheckReport check_regular_bounds(const GeneratorFamily& fam, const std::vector<LaurentPolynomial>& polys,
                                      const std::vector<TimePoint>& times, std::size_t grid, double tol,
                                      const TorusSupOptions& options) {
    std::vector<TorusSup> sups(polys.size());
    parallel_for(polys.size(), [&](std::size_t i) { sups[i] = torus_sup(polys[i], grid, options); });

    BoundCheckReport report;
    report.tolerance = tol;
    report.rows.resize(polys.size() * times.size());
    parallel_for(report.rows.size(), [&](std::size_t idx) {
        const std::size_t pi = idx / times.size();
        const std::size_t ti = idx % times.size();
        BoundCheckRow& row = report.rows[idx];
        row.poly_index = pi;
        row.time_index = ti;
        row.operator_norm = spectral_norm(regular_evaluate(fam, polys[pi], times[ti]));
        row.torus_lower = sups[pi].lower;
        row.torus_upper = sups[pi].upper;
        row.pass = row.operator_norm <= row.torus_upper + tol;
    });
    for (const BoundCheckRow& row : report.rows) report.pass = report.pass && row.pass;
    return report;
}

LaurentPolynomial partition_difference_polynomial(std::size_t d, Subset k) {
    if (!k.fits(d)) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds arity");
    const LaurentPolynomial one = LaurentPolynomial::constant(d, 1.0);
    LaurentPolynomial sum(d);
    for (const auto& [c1, c2] : k.partitions()) {
        LaurentPolynomial term = one;
        for (std::size_t i : c1.indices()) term = term * (one - LaurentPolynomial::variable(d, i, -1));
        for (std::size_t j : c2.indices()) term = term * (one - LaurentPolynomial::variable(d, j, 1));
        sum += term;
    }
    return sum;
}

LaurentPolynomial witness_polynomial(std::size_t d, Subset k, double alpha, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveTime, "witness needs t > 0");
    const double scale = alpha / std::pow(2.0 * t, static_cast<double>(k.size()));
    return LaurentPolynomial::constant(d, 1.0) - cplx{scale} * partition_difference_polynomial(d, k);
}

std::optional<ViolationWitness> falsify(const GeneratorFamily& fam, const FalsifyOptions& options) {
    validate_family(fam);
    const DissipationTable table = dissipation_recursive(fam, options.rel_tol);
    if (table.beta >= -table.tolerance) return std::nullopt;

    const Subset k = table.argmin;
    const double order = static_cast<double>(k.size());
    double last_min = 0.0;
    for (int e = options.first_exponent; e <= options.last_exponent; ++e) {
        const double t = std::ldexp(1.0, -e);
        const ComplexMatrix s = finite_difference_dissipation(fam, k, t);
        const HermitianSpectrumSummary spectrum = herm_min_eig(s);
        last_min = spectrum.min_eig;
        if (!(spectrum.min_eig < -table.tolerance)) continue;

        ViolationWitness w;
        w.k = k;
        w.t = t;
        w.alpha = 0.5 * std::pow(0.5 * t, order);
        w.polynomial = witness_polynomial(fam.d(), k, w.alpha, t);
        w.fd_min_eig = spectrum.min_eig;
        w.fd_max_eig = spectrum.max_eig;
        w.operator_norm = std::max(std::abs(1.0 - w.alpha * spectrum.min_eig), std::abs(1.0 - w.alpha * spectrum.max_eig));
        w.torus_sup = 1.0;
        w.margin = w.operator_norm - w.torus_sup;
        if (options.compute_bracket) {
            const std::size_t grid = options.grid ? options.grid : default_torus_grid(k.size());
            const TorusSup sup = torus_sup(w.polynomial, grid, options.torus);
            w.torus_lower = sup.lower;
            w.torus_upper = sup.upper;
            w.bracket_converged = sup.converged;
        } else {
            w.torus_lower = w.torus_upper = w.torus_sup;
        }
        return w;
    }
    throw Error(ErrorCode::SearchExhausted,
                "no t in {2^-" + std::to_string(options.first_exponent) + ", ..., 2^-" +
                    std::to_string(options.last_exponent) + "} gives min_eig(S_K(t)) < " +
                    std::to_string(-table.tolerance) + " (beta = " + std::to_string(table.beta) +
                    ", last min_eig = " + std::to_string(last_min) + ")");
}

}  // namespace regdil
