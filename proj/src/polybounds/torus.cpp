#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "regdil/error.hpp"
#include "regdil/polybounds.hpp"

namespace regdil {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Polynomial restricted to the variables that actually occur in it.
struct Reduced {
    std::size_t m = 0;                 // number of active variables
    std::vector<std::size_t> active;   // original index of each active variable
    std::vector<int> exps;             // term-major, m per term
    std::vector<cplx> coefs;
    double s1 = 0.0;  // sum |c| ||n||_1
    double s2 = 0.0;  // sum |c| ||n||_1^2
    double s3 = 0.0;  // sum |c| ||n||_1^3
    double s4 = 0.0;  // sum |c| ||n||_1^4

    std::size_t terms() const { return coefs.size(); }

    // Value at theta, with the gradient, the (row-major) Hessian and the
    // sum of absolute third derivatives when requested.
    cplx eval(const double* theta, cplx* grad, cplx* hess = nullptr, double* third = nullptr) const {
        cplx sum{};
        if (grad) std::fill(grad, grad + m, cplx{});
        if (hess) std::fill(hess, hess + m * m, cplx{});
        if (third) third_.assign(m * m * m, cplx{});
        for (std::size_t t = 0; t < terms(); ++t) {
            const int* n = &exps[t * m];
            double phase = 0.0;
            for (std::size_t j = 0; j < m; ++j) phase += n[j] * theta[j];
            const cplx v = coefs[t] * std::polar(1.0, phase);
            sum += v;
            if (grad) {
                const cplx iv{-v.imag(), v.real()};
                for (std::size_t j = 0; j < m; ++j) grad[j] += static_cast<double>(n[j]) * iv;
            }
            if (hess) {
                for (std::size_t j = 0; j < m; ++j) {
                    for (std::size_t k = 0; k < m; ++k) hess[j * m + k] -= static_cast<double>(n[j] * n[k]) * v;
                }
            }
            if (third) {
                const cplx miv{v.imag(), -v.real()};
                for (std::size_t j = 0; j < m; ++j)
                    for (std::size_t k = 0; k < m; ++k)
                        for (std::size_t l = 0; l < m; ++l)
                            third_[(j * m + k) * m + l] += static_cast<double>(n[j] * n[k] * n[l]) * miv;
            }
        }
        if (third) {
            *third = 0.0;
            for (const cplx& x : third_) *third += std::abs(x);
        }
        return sum;
    }

private:
    mutable std::vector<cplx> third_;
};

Reduced reduce(const LaurentPolynomial& p) {
    Reduced r;
    std::vector<bool> used(p.d(), false);
    for (const auto& [n, c] : p.terms()) {
        for (std::size_t i = 0; i < n.size(); ++i) used[i] = used[i] || n[i] != 0;
    }
    for (std::size_t i = 0; i < p.d(); ++i) {
        if (used[i]) r.active.push_back(i);
    }
    r.m = r.active.size();
    for (const auto& [n, c] : p.terms()) {
        double l1 = 0.0;
        for (std::size_t i : r.active) {
            r.exps.push_back(n[i]);
            l1 += std::abs(n[i]);
        }
        r.coefs.push_back(c);
        r.s1 += std::abs(c) * l1;
        r.s2 += std::abs(c) * l1 * l1;
        r.s3 += std::abs(c) * l1 * l1 * l1;
        r.s4 += std::abs(c) * l1 * l1 * l1 * l1;
    }
    return r;
}

// Upper bound on |p| over the sup-norm box of half-width h around a point
// with value p, gradient g, Hessian H and third-derivative tensor T; the
// minimum of
//   |p| + S1 h                                  (Lipschitz)
//   |p + g.s| + S2 h^2 / 2                      (first-order Taylor)
//   |p + g.s + s.H.s / 2| + S3 h^3 / 6          (second-order Taylor)
//   the same with T(s,s,s) / 6 bounded by |T|_1 h^3 / 6, plus S4 h^4 / 24
// where S_k = sum |c_n| ||n||_1^k. The Taylor forms stay tight near flat maxima.
class CellBound {
public:
    explicit CellBound(const Reduced& r) : r_(r), m_(r.m), mat_(r.m * r.m), eig_(r.m) {}

    double operator()(cplx value, const cplx* grad, const cplx* hess, double third, double h) {
        const double abs_p = std::abs(value);
        const double lipschitz = abs_p + r_.s1 * h;

        double lin = 0.0;
        double gsum = 0.0;
        for (std::size_t j = 0; j < m_; ++j) {
            lin += std::abs((std::conj(value) * grad[j]).real());
            gsum += std::abs(grad[j]);
        }
        const double first = std::sqrt(abs_p * abs_p + 2.0 * h * lin + h * h * gsum * gsum) + 0.5 * r_.s2 * h * h;

        // |p + L + R|^2 = |p|^2 + b.s + s.M.s + |L + R|^2 with b = 2 Re(conj(p) g),
        // M = Re(conj(p) H); the middle terms are bounded in the eigenbasis of M
        // over the ball of radius h sqrt(m), which contains the box.
        double hsum = 0.0;
        for (std::size_t j = 0; j < m_ * m_; ++j) {
            mat_[j] = (std::conj(value) * hess[j]).real();
            hsum += std::abs(hess[j]);
        }
        double second = first;
        const lapack_int n = static_cast<lapack_int>(m_);
        if (LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'V', 'U', n, mat_.data(), n, eig_.data()) == 0) {
            const double radius = h * std::sqrt(static_cast<double>(m_));
            double quad = 0.0;
            for (std::size_t j = 0; j < m_; ++j) {
                double beta = 0.0;
                for (std::size_t k = 0; k < m_; ++k) beta += mat_[k * m_ + j] * 2.0 * (std::conj(value) * grad[k]).real();
                const double lambda = eig_[j];
                if (lambda < 0.0 && std::abs(beta) <= -2.0 * lambda * radius) {
                    quad += -beta * beta / (4.0 * lambda);
                } else {
                    quad += std::abs(beta) * radius + lambda * radius * radius;
                }
            }
            const double lr = gsum * h + 0.5 * hsum * h * h;
            second = std::sqrt(std::max(0.0, abs_p * abs_p + quad + lr * lr)) + r_.s3 * h * h * h / 6.0;
            if (third >= 0.0) {
                const double cubic = third * h * h * h / 6.0;
                const double tail = lr + cubic;
                const double fourth = std::sqrt(std::max(0.0, abs_p * abs_p + quad + 2.0 * abs_p * cubic + tail * tail)) +
                                      r_.s4 * h * h * h * h / 24.0;
                second = std::min(second, fourth);
            }
        }
        const double bound = std::min({lipschitz, first, second});
        return bound * (1.0 + 1e-14) + 1e-15 * (1.0 + r_.s1);
    }

private:
    const Reduced& r_;
    std::size_t m_;
    std::vector<double> mat_;
    std::vector<double> eig_;
};

struct Cell {
    double bound;
    double h;
    std::vector<double> center;
    bool operator<(const Cell& other) const { return bound < other.bound; }
};

// Golden-section maximization of |p| along coordinate j within +-radius.
double golden_line(const Reduced& r, std::vector<double>& theta, std::size_t j, double radius) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double origin = theta[j];
    auto f = [&](double x) {
        theta[j] = x;
        return std::abs(r.eval(theta.data(), nullptr));
    };
    double a = origin - radius;
    double b = origin + radius;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double f0 = f(origin);
    const double best_x = f1 >= f2 ? x1 : x2;
    const double best_f = std::max(f1, f2);
    theta[j] = best_f > f0 ? best_x : origin;
    return std::max(best_f, f0);
}

}  // namespace

std::size_t default_torus_grid(std::size_t d) {
    if (d <= 3) return 64;
    if (d <= 6) return 16;
    return 8;
}

TorusSup torus_sup(const LaurentPolynomial& p, std::size_t grid_per_dim, const TorusSupOptions& options) {
    if (p.is_zero()) throw Error(ErrorCode::EmptyPolynomial, "polynomial has no terms");
    if (grid_per_dim < 8) throw Error(ErrorCode::BadParameters, "torus grid needs at least 8 points per dimension");

    const Reduced r = reduce(p);
    TorusSup out;
    out.grid_per_dim = grid_per_dim;
    out.argmax_theta.assign(p.d(), 0.0);

    if (r.m == 0) {
        out.lower = out.upper = std::abs(r.coefs.front());
        out.converged = true;
        return out;
    }

    const std::size_t n = grid_per_dim;
    const std::size_t m = r.m;
    std::size_t total = 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (total > (std::size_t{1} << 40) / n) throw Error(ErrorCode::DimensionBudgetExceeded, "torus grid too large");
        total *= n;
    }
    const double step = kTwoPi / static_cast<double>(n);

    auto grid_point = [&](std::size_t index, std::vector<double>& theta) {
        for (std::size_t j = 0; j < m; ++j) {
            theta[j] = static_cast<double>(index % n) * step;
            index /= n;
        }
    };

    // Grid maximum.
    std::vector<double> theta(m);
    std::vector<double> best_theta(m, 0.0);
    double lower = -1.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        grid_point(idx, theta);
        const double v = std::abs(r.eval(theta.data(), nullptr));
        if (v > lower) {
            lower = v;
            best_theta = theta;
        }
    }

    // Coordinate ascent.
    theta = best_theta;
    for (int sweep = 0; sweep < 50; ++sweep) {
        const double before = lower;
        for (std::size_t j = 0; j < m; ++j) lower = std::max(lower, golden_line(r, theta, j, step));
        if (lower - before <= 1e-15) break;
    }
    best_theta = theta;

    // Branch and bound over grid cells.
    std::vector<cplx> grad(m);
    std::vector<cplx> hess(m * m);
    CellBound cell_bound(r);
    const bool use_third = m <= 4;  // m^3 work per term
    std::priority_queue<Cell> queue;
    double set_aside = 0.0;  // max bound of cells that were not queued
    std::size_t evaluated = 0;

    auto consider = [&](std::vector<double> center, double h) {
        double third = -1.0;
        const cplx value = r.eval(center.data(), grad.data(), hess.data(), use_third ? &third : nullptr);
        ++evaluated;
        const double v = std::abs(value);
        if (v > lower) {
            lower = v;
            best_theta = center;
        }
        const double bound = cell_bound(value, grad.data(), hess.data(), third, h);
        if (bound <= lower + options.target_width || queue.size() >= options.max_cells) {
            set_aside = std::max(set_aside, bound);
        } else {
            queue.push({bound, h, std::move(center)});
        }
    };

    for (std::size_t idx = 0; idx < total; ++idx) {
        grid_point(idx, theta);
        consider(theta, 0.5 * step);
    }

    const std::size_t children = std::size_t{1} << m;
    while (!queue.empty() && evaluated < options.max_cells) {
        if (queue.top().bound <= lower + options.target_width) break;
        Cell cell = queue.top();
        queue.pop();
        const double h = 0.5 * cell.h;
        for (std::size_t c = 0; c < children; ++c) {
            std::vector<double> center = cell.center;
            for (std::size_t j = 0; j < m; ++j) center[j] += (c >> j & 1U) ? h : -h;
            consider(std::move(center), h);
        }
    }

    double upper = set_aside;
    if (!queue.empty()) upper = std::max(upper, queue.top().bound);
    upper = std::max(upper, lower);

    out.lower = lower;
    out.upper = upper;
    out.cells_evaluated = evaluated;
    out.converged = upper - lower <= options.target_width;
    for (std::size_t j = 0; j < m; ++j) {
        out.argmax_theta[r.active[j]] = std::remainder(best_theta[j], kTwoPi);
    }
    return out;
}

}  // namespace regdil
