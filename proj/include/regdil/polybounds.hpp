#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "regdil/dissipation.hpp"
#include "regdil/semigroup.hpp"

namespace regdil {

using Exponent = std::vector<int>;

/// Finitely supported map Z^d -> C, i.e. an element of
/// C[X_1, X_1^-1, ..., X_d, X_d^-1]. Zero coefficients are never stored.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(std::size_t d = 1) : d_(d) {}

    static LaurentPolynomial constant(std::size_t d, cplx c);
    static LaurentPolynomial monomial(Exponent n, cplx c = 1.0);
    /// X_i^power (power may be negative).
    static LaurentPolynomial variable(std::size_t d, std::size_t index, int power = 1);

    std::size_t d() const noexcept { return d_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<Exponent, cplx>& terms() const noexcept { return terms_; }

    /// Adds c X^n; drops the entry if the coefficient becomes exactly zero.
    LaurentPolynomial& add_term(const Exponent& n, cplx c);

    LaurentPolynomial& operator+=(const LaurentPolynomial& other);
    LaurentPolynomial& operator-=(const LaurentPolynomial& other);
    LaurentPolynomial& operator*=(cplx factor);

    /// p(lambda_1, ..., lambda_d) for nonzero lambda_i.
    cplx evaluate(std::span<const cplx> lambda) const;
    /// p(e^{i theta_1}, ..., e^{i theta_d}).
    cplx evaluate_on_torus(std::span<const double> theta) const;

    /// Sum |c_n| ||n||_1: Lipschitz constant of theta -> p(e^{i theta}) in the sup norm.
    double lipschitz_bound() const;

    bool operator==(const LaurentPolynomial&) const = default;

private:
    std::size_t d_;
    std::map<Exponent, cplx> terms_;
};

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b);
LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
LaurentPolynomial operator*(cplx c, LaurentPolynomial p);

/// Regular evaluation on semigroup values:
/// sum_n c_n T((n.t)^-)* T((n.t)^+), with (n.t)_i = n_i t_i.
/// Throws ArityMismatch, NegativeTime.
ComplexMatrix regular_evaluate(const GeneratorFamily& fam, const LaurentPolynomial& p, const TimePoint& t);

// ---------------------------------------------------------------------------
// Supremum of |p| over the d-torus.

struct TorusSupOptions {
    /// Stop refining once upper - lower <= target_width.
    double target_width = 5e-7;
    /// Budget on evaluated cells in the upper-bracket search.
    std::size_t max_cells = 2'000'000;
};

struct TorusSup {
    double lower = 0.0;  // attained value, a lower bound on the sup
    double upper = 0.0;  // certified upper bound
    std::vector<double> argmax_theta;  // angles attaining `lower`
    std::size_t grid_per_dim = 0;
    std::size_t cells_evaluated = 0;
    bool converged = false;  // upper - lower <= target_width
};

/// Default grid: 64 points per dimension for d <= 3, 16 for d <= 6, else 8.
std::size_t default_torus_grid(std::size_t d);

/// Grid maximum followed by per-coordinate golden-section ascent (lower
/// bound), and a branch-and-bound over grid cells using first- and
/// second-order Taylor bounds of theta -> p(e^{i theta}) (upper bound).
/// Variables that do not occur in p are eliminated first.
/// Throws EmptyPolynomial; requires grid_per_dim >= 8.
TorusSup torus_sup(const LaurentPolynomial& p, std::size_t grid_per_dim,
                   const TorusSupOptions& options = {});

struct BoundCheckRow {
    std::size_t poly_index = 0;
    std::size_t time_index = 0;
    double operator_norm = 0.0;
    double torus_lower = 0.0;
    double torus_upper = 0.0;
    bool pass = true;
};

struct BoundCheckReport {
    bool pass = true;
    double tolerance = 1e-9;
    std::vector<BoundCheckRow> rows;
};

/// ||p(T_1(t_1), ..., T_d(t_d))|| <= sup_torus |p| for every (p, t);
/// a pair fails only if the norm exceeds the upper bracket + tol.
BoundCheckReport check_regular_bounds(const GeneratorFamily& fam, const std::vector<LaurentPolynomial>& polys,
                                      const std::vector<TimePoint>& times, std::size_t grid,
                                      double tol = 1e-9, const TorusSupOptions& options = {});

/// sum_{(C1,C2)} prod_{C1} (1 - X_i^-1) prod_{C2} (1 - X_j)
LaurentPolynomial partition_difference_polynomial(std::size_t d, Subset k);

/// 1 - alpha (2t)^-|K| * partition_difference_polynomial(d, K)
LaurentPolynomial witness_polynomial(std::size_t d, Subset k, double alpha, double t);

struct ViolationWitness {
    Subset k;
    double t = 0.0;
    double alpha = 0.0;
    LaurentPolynomial polynomial;
    double operator_norm = 0.0;  // from the eigenvalues of 1 - alpha S_{T,K}(t)
    double torus_sup = 1.0;      // exact value for the witness polynomial
    double torus_lower = 0.0;    // numeric bracket (when computed)
    double torus_upper = 0.0;
    bool bracket_converged = false;
    double margin = 0.0;         // operator_norm - torus_sup
    double fd_min_eig = 0.0;     // min eig of S_{T,K}(t)
    double fd_max_eig = 0.0;
};

struct FalsifyOptions {
    int first_exponent = 1;  // t in {2^-k : k = first..last}
    int last_exponent = 20;
    bool compute_bracket = true;
    std::size_t grid = 0;  // 0 = default_torus_grid(|K|)
    TorusSupOptions torus{};
    double rel_tol = kCertificationTol;
};

/// Constructs a polynomial violating the regular polynomial bounds when
/// beta_T < -tol; returns nullopt when beta_T >= -tol.
/// Throws SearchExhausted if no step size exposes negativity.
std::optional<ViolationWitness> falsify(const GeneratorFamily& fam, const FalsifyOptions& options = {});

}  // namespace regdil
