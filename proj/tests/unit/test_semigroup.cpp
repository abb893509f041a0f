#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "regdil/error.hpp"
#include "regdil/random.hpp"
#include "regdil/semigroup.hpp"

using namespace regdil;
using regdil::testing::rel_diff;

TEST_CASE("commutation examples") {
    const std::vector<cplx> d1{-1.0, -2.0};
    const std::vector<cplx> d2{-3.0, -4.0};
    const auto diag = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
    CHECK(validate_commuting(diag).max_relative_defect == 0.0);

    CHECK(validate_commuting(testing::hand_counterexample(0.8)).max_relative_defect == 0.0);

    const auto bad = testing::family_of({ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 0.0}, {1.0, 0.0}}});
    const CommutationReport r = commutation_report(bad);
    CHECK_FALSE(r.passes);
    CHECK(r.worst_norm == doctest::Approx(1.0));
    try {
        validate_commuting(bad);
        FAIL("expected CommutationViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CommutationViolation);
    }
}

TEST_CASE("evaluate examples") {
    const auto ce = testing::hand_counterexample(0.8);
    CHECK(evaluate(ce, {0.0, 0.0}) == ComplexMatrix::identity(2));
    const auto scalar = testing::scalar_family({-1.0});
    CHECK(std::abs(evaluate(scalar, {0.5})(0, 0) - std::exp(-0.5)) < 1e-15);

    for (double s : {0.0, 0.1, 0.7, 2.0}) {
        for (double t : {0.0, 0.3, 1.5}) {
            ComplexMatrix closed = ComplexMatrix::identity(2);
            closed.add_scaled(s, ComplexMatrix::identity(2) + ce[0]);
            closed.add_scaled(t, ComplexMatrix::identity(2) + ce[1]);
            closed *= std::exp(-(s + t));
            CHECK(rel_diff(evaluate(ce, {s, t}), closed) < 1e-14);
        }
    }
}

TEST_CASE("evaluate errors") {
    const auto ce = testing::hand_counterexample(0.8);
    CHECK_THROWS_AS(evaluate(ce, {-0.1, 0.0}), Error);
    CHECK_THROWS_AS(evaluate(ce, {0.1}), Error);
    CHECK_THROWS_AS(marginal(ce, 2, 0.1), Error);
}

TEST_CASE("marginal examples") {
    const std::vector<cplx> d1{-1.0, -2.0};
    const auto fam = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d1)});
    CHECK(marginal(fam, 0, 0.0) == ComplexMatrix::identity(2));
    const std::vector<cplx> ed{std::exp(-1.0), std::exp(-2.0)};
    CHECK(rel_diff(marginal(fam, 0, 1.0), ComplexMatrix::diagonal(ed)) < 1e-15);
    const auto ce = testing::hand_counterexample(0.8);
    CHECK(rel_diff(marginal(ce, 1, 0.4), evaluate(ce, {0.0, 0.4})) <= 1e-12);
}

TEST_CASE("make_zoo examples") {
    ZooSpec spec;
    spec.kind = ZooKind::triangular_counterexample;
    spec.d = 2;
    spec.alpha = 0.8;
    const GeneratorFamily fam = make_zoo(spec);
    REQUIRE(fam.d() == 2);
    for (const ComplexMatrix& a : fam.generators) {
        CHECK(rel_diff(a, ComplexMatrix{{-1.0, -1.6}, {0.0, -1.0}}) < 1e-15);
        CHECK(herm_eigenvalues(a.hermitian_part()).back() <= 1e-12);  // dissipative
    }

    ZooSpec poly;
    poly.kind = ZooKind::single_matrix_polynomials;
    poly.d = 3;
    poly.dim = 5;
    poly.seed = 99;
    CHECK(validate_commuting(make_zoo(poly)).max_relative_defect <= 1e-12);

    ZooSpec diag;
    diag.kind = ZooKind::diagonal_normal;
    diag.d = 2;
    diag.dim = 4;
    diag.seed = 5;
    const GeneratorFamily dfam = make_zoo(diag);
    for (const ComplexMatrix& a : dfam.generators) CHECK(herm_eigenvalues(a.hermitian_part()).back() <= 0.0);
}

TEST_CASE("make_zoo parameter checks") {
    ZooSpec spec;
    spec.kind = ZooKind::triangular_counterexample;
    spec.d = 2;
    spec.alpha = 0.6;  // below the window for d = 2
    CHECK_THROWS_AS(make_zoo(spec), Error);
    spec.enforce_alpha_window = false;
    CHECK_NOTHROW(make_zoo(spec));
    spec.alpha = 1.2;
    CHECK_THROWS_AS(make_zoo(spec), Error);
    CHECK(parse_zoo_kind("triangular") == ZooKind::triangular_counterexample);
    CHECK_FALSE(parse_zoo_kind("nope").has_value());
}

TEST_CASE("semigroup laws on the corpus") {
    const auto corpus = build_corpus(testing::kCorpusSeed, 30);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const GeneratorFamily& fam : corpus) {
        TimePoint s(fam.d());
        TimePoint t(fam.d());
        TimePoint st(fam.d());
        for (std::size_t i = 0; i < fam.d(); ++i) {
            s[i] = unit(rng);
            t[i] = unit(rng);
            st[i] = s[i] + t[i];
        }
        const ComplexMatrix ts = evaluate(fam, st);
        CHECK((ts - evaluate(fam, s) * evaluate(fam, t)).frobenius_norm() <= 1e-9 * (1.0 + ts.frobenius_norm()));

        ComplexMatrix forward = ComplexMatrix::identity(fam.dim());
        ComplexMatrix backward = ComplexMatrix::identity(fam.dim());
        for (std::size_t i = 0; i < fam.d(); ++i) {
            forward = forward * marginal(fam, i, s[i]);
            backward = backward * marginal(fam, fam.d() - 1 - i, s[fam.d() - 1 - i]);
        }
        const ComplexMatrix direct = evaluate(fam, s);
        CHECK(rel_diff(forward, direct) <= 1e-9);
        CHECK(rel_diff(backward, direct) <= 1e-9);
    }
}

TEST_CASE("triangular zoo generators are dissipative and contractive") {
    for (std::size_t d = 2; d <= 4; ++d) {
        ZooSpec spec;
        spec.kind = ZooKind::triangular_counterexample;
        spec.d = d;
        spec.dim1 = 2;
        spec.dim2 = 2;
        spec.alpha = 0.5 * (1.0 / std::sqrt(double(d)) + 1.0 / std::sqrt(double(d - 1)));
        spec.isometry = IsometryChoice::random;
        spec.seed = d;
        const GeneratorFamily fam = make_zoo(spec);
        for (const ComplexMatrix& a : fam.generators) CHECK(herm_eigenvalues(a.hermitian_part()).back() <= 1e-12);
        for (double t : {0.0, 0.05, 0.3, 1.0, 4.0}) {
            CHECK(spectral_norm(evaluate(fam, TimePoint(d, t))) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("corpus is deterministic and within size limits") {
    const auto a = build_corpus(5, 12);
    const auto b = build_corpus(5, 12);
    CHECK(a == b);
    for (const auto& fam : a) {
        CHECK(fam.d() <= 4);
        CHECK(fam.dim() <= 16);
    }
}
