#include <cmath>
#include <string>

#include "regdil/error.hpp"
#include "regdil/polybounds.hpp"

namespace regdil {

LaurentPolynomial LaurentPolynomial::constant(std::size_t d, cplx c) {
    LaurentPolynomial p(d);
    p.add_term(Exponent(d, 0), c);
    return p;
}

LaurentPolynomial LaurentPolynomial::monomial(Exponent n, cplx c) {
    LaurentPolynomial p(n.size());
    p.add_term(n, c);
    return p;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t d, std::size_t index, int power) {
    if (index >= d) throw Error(ErrorCode::IndexOutOfRange, "variable index outside arity");
    Exponent n(d, 0);
    n[index] = power;
    return monomial(std::move(n));
}

LaurentPolynomial& LaurentPolynomial::add_term(const Exponent& n, cplx c) {
    if (n.size() != d_) throw Error(ErrorCode::ArityMismatch, "exponent length differs from arity");
    if (c == cplx{}) return *this;
    auto [it, inserted] = terms_.try_emplace(n, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx{}) terms_.erase(it);
    }
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
    if (other.d_ != d_) throw Error(ErrorCode::ArityMismatch, "polynomial arities differ");
    for (const auto& [n, c] : other.terms_) add_term(n, c);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
    if (other.d_ != d_) throw Error(ErrorCode::ArityMismatch, "polynomial arities differ");
    for (const auto& [n, c] : other.terms_) add_term(n, -c);
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(cplx factor) {
    if (factor == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [n, c] : terms_) c *= factor;
    return *this;
}

cplx LaurentPolynomial::evaluate(std::span<const cplx> lambda) const {
    if (lambda.size() != d_) throw Error(ErrorCode::ArityMismatch, "point has wrong arity");
    cplx sum{};
    for (const auto& [n, c] : terms_) {
        cplx term = c;
        for (std::size_t i = 0; i < d_; ++i) {
            if (n[i] != 0) term *= std::pow(lambda[i], n[i]);
        }
        sum += term;
    }
    return sum;
}

cplx LaurentPolynomial::evaluate_on_torus(std::span<const double> theta) const {
    if (theta.size() != d_) throw Error(ErrorCode::ArityMismatch, "point has wrong arity");
    cplx sum{};
    for (const auto& [n, c] : terms_) {
        double phase = 0.0;
        for (std::size_t i = 0; i < d_; ++i) phase += n[i] * theta[i];
        sum += c * std::polar(1.0, phase);
    }
    return sum;
}

double LaurentPolynomial::lipschitz_bound() const {
    double total = 0.0;
    for (const auto& [n, c] : terms_) {
        double l1 = 0.0;
        for (int e : n) l1 += std::abs(e);
        total += std::abs(c) * l1;
    }
    return total;
}

LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
LaurentPolynomial operator*(cplx c, LaurentPolynomial p) { return p *= c; }

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.d() != b.d()) throw Error(ErrorCode::ArityMismatch, "polynomial arities differ");
    LaurentPolynomial out(a.d());
    Exponent n(a.d());
    for (const auto& [na, ca] : a.terms()) {
        for (const auto& [nb, cb] : b.terms()) {
            for (std::size_t i = 0; i < n.size(); ++i) n[i] = na[i] + nb[i];
            out.add_term(n, ca * cb);
        }
    }
    return out;
}

}  // namespace regdil
