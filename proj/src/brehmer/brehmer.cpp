#include "regdil/brehmer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "regdil/error.hpp"
#include "regdil/parallel.hpp"

namespace regdil {
namespace {

void check_time(double t) {
    if (t < 0.0) throw Error(ErrorCode::NegativeTime, "Brehmer time must be >= 0");
}

void check_subset(const GeneratorFamily& fam, Subset k) {
    if (!k.fits(fam.d())) throw Error(ErrorCode::IndexOutOfRange, "subset exceeds generator count");
}

BrehmerSample make_sample(Subset k, double t, ComplexMatrix op) {
    HermitianSpectrumSummary spectrum = herm_min_eig(op);
    return {k, t, std::move(op), spectrum};
}

}  // namespace

BrehmerSample brehmer_direct(const GeneratorFamily& fam, Subset k, double t) {
    check_time(t);
    check_subset(fam, k);
    ComplexMatrix sum(fam.dim());
    for (Subset c : k.subsets()) {
        const ComplexMatrix value = evaluate(fam, scaled_indicator(fam.d(), c, t));
        const double sign = c.size() % 2 == 0 ? 1.0 : -1.0;
        sum.add_scaled(sign, adjoint_times(value, value));
    }
    return make_sample(k, t, std::move(sum));
}

BrehmerSample brehmer_recursive(const GeneratorFamily& fam, Subset k, double t) {
    check_time(t);
    check_subset(fam, k);
    ComplexMatrix b = ComplexMatrix::identity(fam.dim());
    for (std::size_t a : k.indices()) {
        const ComplexMatrix ta = marginal(fam, a, t);
        b -= congruence(ta, b);
    }
    return make_sample(k, t, std::move(b));
}

std::vector<ComplexMatrix> brehmer_table(const GeneratorFamily& fam, double t) {
    check_time(t);
    const std::size_t count = std::size_t{1} << fam.d();
    std::vector<ComplexMatrix> marginals;
    marginals.reserve(fam.d());
    for (std::size_t i = 0; i < fam.d(); ++i) marginals.push_back(marginal(fam, i, t));

    std::vector<ComplexMatrix> table(count);
    table[0] = ComplexMatrix::identity(fam.dim());
    for (std::uint32_t mask = 1; mask < count; ++mask) {
        const Subset k{mask};
        const std::size_t top = k.highest();
        const ComplexMatrix& parent = table[k.without(top).mask()];
        table[mask] = parent - congruence(marginals[top], parent);
    }
    return table;
}

std::vector<double> dyadic_grid(int first, int last) {
    std::vector<double> grid;
    for (int k = first; k <= last; ++k) grid.push_back(std::ldexp(1.0, -k));
    return grid;
}

std::vector<double> default_scan_grid() { return dyadic_grid(0, 12); }

ScanReport positivity_scan(const GeneratorFamily& fam, const std::vector<double>& t_grid, double tol) {
    if (t_grid.empty()) throw Error(ErrorCode::NonpositiveGridPoint, "scan grid is empty");
    for (double t : t_grid) {
        if (!(t > 0.0)) throw Error(ErrorCode::NonpositiveGridPoint, "grid point " + std::to_string(t) + " <= 0");
    }
    const std::size_t count = std::size_t{1} << fam.d();
    ScanReport report;
    report.tolerance = tol;
    report.grid = t_grid;
    report.rows.resize(t_grid.size() * count);

    parallel_for(t_grid.size(), [&](std::size_t ti) {
        const double t = t_grid[ti];
        const std::vector<ComplexMatrix> table = brehmer_table(fam, t);
        for (std::uint32_t mask = 0; mask < count; ++mask) {
            const PsdCheck check = is_psd(table[mask], tol);
            report.rows[ti * count + mask] = {Subset{mask}, t, check.summary.min_eig, check.threshold};
        }
    });

    for (const ScanRow& row : report.rows) {
        if (row.min_eig < row.threshold) {
            report.pass = false;
            if (!report.witness || row.min_eig < report.witness->min_eig) report.witness = row;
        }
    }
    return report;
}

std::optional<ScanRow> refine_negative_witness(const GeneratorFamily& fam, int max_exponent,
                                               int substeps, double tol) {
    const BetaResult b = beta(fam);
    const Subset k = b.argmin;
    if (k.is_empty()) return std::nullopt;
    for (int j = 0; j <= max_exponent * substeps; ++j) {
        const double t = std::exp2(-static_cast<double>(j) / substeps);
        const BrehmerSample sample = brehmer_recursive(fam, k, t);
        const double threshold = -tol * (1.0 + sample.spectrum.norm());
        if (sample.spectrum.min_eig < threshold) return ScanRow{k, t, sample.spectrum.min_eig, threshold};
    }
    return std::nullopt;
}

AsymptoticsReport check_asymptotics(const GeneratorFamily& fam, Subset k,
                                    const std::vector<double>& t_grid) {
    check_subset(fam, k);
    AsymptoticsReport report;
    report.k = k;
    const DissipationTable table = dissipation_recursive(fam);
    const ComplexMatrix& s = table[k].op;
    const double order = static_cast<double>(k.size());

    for (double t : t_grid) {
        const BrehmerSample b = brehmer_recursive(fam, k, t);
        ComplexMatrix r = b.op;
        r.add_scaled(-std::pow(2.0 * t, order), s);
        report.t.push_back(t);
        report.remainder_norms.push_back(spectral_norm(r));
    }

    // Three smallest t whose remainder stays above the roundoff floor.
    std::vector<std::size_t> idx(t_grid.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i : idx) {
        if (report.remainder_norms[i] > kRemainderFloor) {
            xs.push_back(std::log(t_grid[i]));
            ys.push_back(std::log(report.remainder_norms[i]));
            report.fit_t.push_back(t_grid[i]);
            if (xs.size() == 3) break;
        }
    }
    if (xs.size() < 2) {
        report.fitted_exponent = std::numeric_limits<double>::infinity();
        report.fitted_constant = 0.0;
        return report;
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i] / n;
        my += ys[i] / n;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (intercept + slope * xs[i]);
        sq += e * e;
    }
    report.fitted_exponent = slope;
    report.fitted_constant = std::exp(intercept);
    report.fit_residual = std::sqrt(sq / n);
    return report;
}

}  // namespace regdil
