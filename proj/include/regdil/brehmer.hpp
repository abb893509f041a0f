#pragma once

#include <optional>
#include <vector>

#include "regdil/dissipation.hpp"
#include "regdil/linalg.hpp"
#include "regdil/semigroup.hpp"

namespace regdil {

struct BrehmerSample {
    Subset k;
    double t = 0.0;
    ComplexMatrix op;
    HermitianSpectrumSummary spectrum;
};

/// B_{T,K}(t) = sum_{C subset K} (-1)^|C| T(t e_C)* T(t e_C).
BrehmerSample brehmer_direct(const GeneratorFamily& fam, Subset k, double t);

/// B_{T,K u {a}}(t) = B_{T,K}(t) - T_a(t)* B_{T,K}(t) T_a(t), ascending a.
BrehmerSample brehmer_recursive(const GeneratorFamily& fam, Subset k, double t);

/// All 2^d Brehmer operators at one time via the recursion.
std::vector<ComplexMatrix> brehmer_table(const GeneratorFamily& fam, double t);

/// Default scan grid {2^-k : k = 0..12}.
std::vector<double> default_scan_grid();

/// {2^-k : k = first..last}.
std::vector<double> dyadic_grid(int first, int last);

struct ScanRow {
    Subset k;
    double t = 0.0;
    double min_eig = 0.0;
    double threshold = 0.0;  // -tol * (1 + ||B||)
};

struct ScanReport {
    bool pass = true;
    double tolerance = kPsdTol;
    std::vector<double> grid;
    std::vector<ScanRow> rows;  // grid order, then K by bitmask
    std::optional<ScanRow> witness;  // most negative failing row
};

/// Brehmer positivity criterion over all K and every t in the grid.
/// Throws NonpositiveGridPoint for t <= 0 or an empty grid.
ScanReport positivity_scan(const GeneratorFamily& fam, const std::vector<double>& t_grid,
                           double tol = kPsdTol);

/// Searches for a negative Brehmer operator B_{T,K}(t) at small t on the
/// subdivided grid {2^(-j/substeps) : j = 0..max_exponent*substeps}, with
/// K the argmin subset of beta. Returns the first failing row.
std::optional<ScanRow> refine_negative_witness(const GeneratorFamily& fam, int max_exponent = 40,
                                               int substeps = 4, double tol = kPsdTol);

struct AsymptoticsReport {
    Subset k;
    std::vector<double> t;
    std::vector<double> remainder_norms;  // ||B_{T,K}(t) - (2t)^|K| S_{T,K}||
    /// Least-squares slope of log r vs log t on the fit points; +inf when
    /// fewer than two points rise above the roundoff floor (r vanishes).
    double fitted_exponent = 0.0;
    /// exp(intercept): empirical bound on ||Delta_{T,K}(t)|| near 0.
    double fitted_constant = 0.0;
    double fit_residual = 0.0;
    std::vector<double> fit_t;
};

inline constexpr double kRemainderFloor = 1e-13;

AsymptoticsReport check_asymptotics(const GeneratorFamily& fam, Subset k,
                                    const std::vector<double>& t_grid = dyadic_grid(0, 40));

}  // namespace regdil
