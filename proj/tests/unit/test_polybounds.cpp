#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "regdil/error.hpp"
#include "regdil/polybounds.hpp"

using namespace regdil;
using regdil::testing::rel_diff;

namespace {

LaurentPolynomial random_poly(std::mt19937_64& rng, std::size_t d, std::size_t terms, int max_exp) {
    std::uniform_int_distribution<int> e(-max_exp, max_exp);
    std::normal_distribution<double> g;
    LaurentPolynomial p(d);
    for (std::size_t t = 0; t < terms; ++t) {
        Exponent n(d);
        for (int& x : n) x = e(rng);
        p.add_term(n, {g(rng), g(rng)});
    }
    return p;
}

}  // namespace

TEST_CASE("Laurent arithmetic") {
    const auto x = LaurentPolynomial::variable(2, 0);
    const auto xinv = LaurentPolynomial::variable(2, 0, -1);
    CHECK((x * xinv) == LaurentPolynomial::constant(2, 1.0));
    CHECK((x - x).is_zero());
    const std::vector<cplx> pt{cplx{0.5, 1.0}, cplx{2.0, 0.0}};
    const auto p = (x + LaurentPolynomial::variable(2, 1, -2)) * (x - LaurentPolynomial::constant(2, 3.0));
    const cplx expected = (pt[0] + 1.0 / (pt[1] * pt[1])) * (pt[0] - 3.0);
    CHECK(std::abs(p.evaluate(pt) - expected) < 1e-14);
    CHECK_THROWS_AS(x + LaurentPolynomial::variable(3, 0), Error);
}

TEST_CASE("regular_evaluate examples") {
    const auto ce = testing::hand_counterexample(0.8);
    const TimePoint t{0.3, 0.7};
    const auto mono = LaurentPolynomial::monomial({1, -1});
    CHECK(rel_diff(regular_evaluate(ce, mono, t), adjoint_times(marginal(ce, 1, 0.7), marginal(ce, 0, 0.3))) < 1e-15);
    CHECK(regular_evaluate(ce, LaurentPolynomial::constant(2, 1.0), t) == ComplexMatrix::identity(2));

    // Nonnegative exponents: ordinary polynomial in the marginals.
    LaurentPolynomial q(2);
    q.add_term({2, 0}, 1.5);
    q.add_term({1, 1}, cplx{0.0, -1.0});
    const ComplexMatrix t1 = marginal(ce, 0, 0.3);
    const ComplexMatrix t2 = marginal(ce, 1, 0.7);
    const ComplexMatrix ordinary = 1.5 * (t1 * t1) + cplx{0.0, -1.0} * (t1 * t2);
    CHECK(rel_diff(regular_evaluate(ce, q, t), ordinary) < 1e-14);

    CHECK_THROWS_AS(regular_evaluate(ce, LaurentPolynomial::constant(3, 1.0), t), Error);
    CHECK_THROWS_AS(regular_evaluate(ce, mono, {-0.1, 0.2}), Error);
}

TEST_CASE("witness polynomial evaluates to 1 - alpha S_K(t)") {
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 12)) {
        const Subset k = Subset::full(fam.d());
        for (double t : {0.5, 0.125}) {
            const double alpha = 0.5 * std::pow(0.5 * t, static_cast<double>(k.size()));
            const LaurentPolynomial p = witness_polynomial(fam.d(), k, alpha, t);
            ComplexMatrix expected = ComplexMatrix::identity(fam.dim());
            expected.add_scaled(-alpha, finite_difference_dissipation(fam, k, t));
            CHECK(rel_diff(regular_evaluate(fam, p, TimePoint(fam.d(), t)), expected) <= 1e-12);
        }
    }
}

TEST_CASE("regular_evaluate is linear") {
    std::mt19937_64 rng(41);
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 9)) {
        const LaurentPolynomial p = random_poly(rng, fam.d(), 5, 3);
        const LaurentPolynomial q = random_poly(rng, fam.d(), 5, 3);
        const TimePoint t(fam.d(), 0.2);
        const ComplexMatrix lhs = regular_evaluate(fam, p + q, t);
        const ComplexMatrix rhs = regular_evaluate(fam, p, t) + regular_evaluate(fam, q, t);
        CHECK((lhs - rhs).frobenius_norm() <= 1e-11);
    }
}

TEST_CASE("torus_sup examples") {
    TorusSupOptions tight;
    tight.target_width = 1e-10;
    const TorusSup x = torus_sup(LaurentPolynomial::variable(1, 0), 16, tight);
    CHECK(x.lower == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x.upper - x.lower <= 1e-8);

    LaurentPolynomial cosine(1);
    cosine.add_term({0}, 2.0);
    cosine.add_term({1}, -1.0);
    cosine.add_term({-1}, -1.0);
    const TorusSup c = torus_sup(cosine, 64);
    CHECK(std::abs(c.lower - 4.0) <= 1e-12);
    CHECK(c.upper >= 4.0);
    CHECK(c.upper - c.lower <= 1e-6);
    CHECK(std::abs(std::abs(c.argmax_theta[0]) - std::numbers::pi) <= 1e-6);

    for (std::size_t d = 1; d <= 3; ++d) {
        const double t = 0.25;
        const double alpha = 0.5 * std::pow(0.5 * t, double(d));
        const TorusSup w = torus_sup(witness_polynomial(d, Subset::full(d), alpha, t), default_torus_grid(d));
        CHECK(std::abs(w.lower - 1.0) <= 1e-12);
        CHECK(w.upper >= 1.0);
        CHECK(w.upper - 1.0 <= 1e-6);
        // The maximum is attained wherever some angle vanishes.
        CHECK(std::abs(witness_polynomial(d, Subset::full(d), alpha, t).evaluate_on_torus(w.argmax_theta)) >= 1.0 - 1e-12);
    }

    CHECK_THROWS_AS(torus_sup(LaurentPolynomial(2), 16), Error);
    CHECK_THROWS_AS(torus_sup(LaurentPolynomial::variable(1, 0), 4), Error);
}

TEST_CASE("torus_sup brackets random polynomials") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t d = 1 + trial % 3;
        const LaurentPolynomial p = random_poly(rng, d, 4 + trial % 5, 3);
        const TorusSup s = torus_sup(p, default_torus_grid(d));
        CHECK(s.lower <= s.upper);
        CHECK(s.upper - s.lower <= 1e-6);
        // Dense random sampling never beats the certified upper bound.
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::vector<double> th(d);
        for (int k = 0; k < 2000; ++k) {
            for (double& a : th) a = angle(rng);
            CHECK(std::abs(p.evaluate_on_torus(th)) <= s.upper);
        }
    }
}

TEST_CASE("witness polynomial values on the torus lie in (0, 1]") {
    const double t = 0.125;
    const Subset k = Subset::full(2);
    const double alpha = 0.9 * std::pow(0.5 * t, 2.0);
    const LaurentPolynomial p = witness_polynomial(2, k, alpha, t);
    const std::size_t n = 96;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::vector<double> th{2 * std::numbers::pi * i / n, 2 * std::numbers::pi * j / n};
            const cplx v = p.evaluate_on_torus(th);
            CHECK(std::abs(v.imag()) <= 1e-12);
            CHECK(v.real() > 0.0);
            CHECK(v.real() <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("falsify examples") {
    const auto ce = testing::hand_counterexample(0.8);
    const std::optional<ViolationWitness> w = falsify(ce);
    REQUIRE(w.has_value());
    CHECK(w->k == Subset::full(2));
    CHECK(w->t <= 0.125);
    CHECK(w->alpha > 0.0);
    CHECK(w->alpha < std::pow(0.5 * w->t, 2.0));
    CHECK(w->margin > 0.0);
    CHECK(std::abs(w->margin - w->alpha * std::abs(w->fd_min_eig)) <= 1e-15);
    CHECK(w->operator_norm > w->torus_upper + 1e-10);
    CHECK(w->torus_lower <= 1.0 + 1e-12);

    // Recompute the operator norm from scratch by regular evaluation.
    const ComplexMatrix op = regular_evaluate(ce, w->polynomial, TimePoint(2, w->t));
    CHECK(std::abs(spectral_norm(op) - w->operator_norm) <= 1e-9);
    CHECK(std::abs(spectral_norm(op) - (1.0 - w->alpha * w->fd_min_eig)) <= 1e-9);

    CHECK_FALSE(falsify(testing::scalar_family({cplx{-0.5, 2.0}})).has_value());
    ZooSpec spec;
    spec.kind = ZooKind::diagonal_normal;
    spec.d = 3;
    spec.dim = 4;
    spec.real_hi = -0.1;
    CHECK_FALSE(falsify(make_zoo(spec)).has_value());
}

TEST_CASE("falsify reports exhausted searches") {
    FalsifyOptions narrow;
    narrow.first_exponent = 1;
    narrow.last_exponent = 2;  // S_K(t) is still positive at t = 1/2, 1/4
    try {
        falsify(testing::hand_counterexample(0.8), narrow);
        FAIL("expected SearchExhausted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SearchExhausted);
    }
}

TEST_CASE("check_regular_bounds") {
    const std::vector<cplx> d1{cplx{0.0, 1.0}, cplx{0.0, -0.5}};
    const std::vector<cplx> d2{cplx{0.0, 2.0}, cplx{0.0, 0.25}};
    const auto unitary = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
    std::mt19937_64 rng(47);
    std::vector<LaurentPolynomial> polys;
    for (int i = 0; i < 6; ++i) polys.push_back(random_poly(rng, 2, 6, 3));
    const std::vector<TimePoint> times{{0.1, 0.2}, {1.0, 0.5}};
    const BoundCheckReport ok = check_regular_bounds(unitary, polys, times, 32);
    CHECK(ok.pass);
    CHECK(ok.rows.size() == polys.size() * times.size());

    const auto ce = testing::hand_counterexample(0.8);
    const ViolationWitness w = *falsify(ce);
    const BoundCheckReport bad = check_regular_bounds(ce, {w.polynomial}, {TimePoint(2, w.t)}, 64);
    CHECK_FALSE(bad.pass);
}
