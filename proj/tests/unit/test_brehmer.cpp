#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "regdil/brehmer.hpp"
#include "regdil/error.hpp"

using namespace regdil;
using regdil::testing::rel_diff;

TEST_CASE("brehmer_direct examples") {
    const auto ce = testing::hand_counterexample(0.8);
    const BrehmerSample empty = brehmer_direct(ce, Subset::empty(), 0.7);
    CHECK(empty.op == ComplexMatrix::identity(2));
    CHECK(empty.spectrum.min_eig == doctest::Approx(1.0));

    const BrehmerSample scalar = brehmer_direct(testing::scalar_family({-1.0}), Subset::single(0), 0.5);
    CHECK(std::abs(scalar.op(0, 0).real() - (1.0 - std::exp(-1.0))) < 1e-15);
    CHECK(std::abs(scalar.op(0, 0).real() - 0.632121) < 1e-6);

    const std::vector<cplx> d1{cplx{-1.0, 2.0}, cplx{-0.5, 0.0}};
    const std::vector<cplx> d2{cplx{-3.0, -1.0}, cplx{-0.25, 1.0}};
    const auto diag = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
    for (double t : {0.1, 0.5, 2.0}) {
        ComplexMatrix expected = ComplexMatrix::identity(2);
        for (std::size_t i = 0; i < 2; ++i) {
            const ComplexMatrix ti = marginal(diag, i, t);
            expected = expected * (ComplexMatrix::identity(2) - adjoint_times(ti, ti));
        }
        CHECK(rel_diff(brehmer_direct(diag, Subset::full(2), t).op, expected) <= 1e-10);
    }
}

TEST_CASE("brehmer_recursive examples") {
    const auto ce = testing::hand_counterexample(0.8);
    const ComplexMatrix t1 = marginal(ce, 0, 0.3);
    CHECK(rel_diff(brehmer_recursive(ce, Subset::single(0), 0.3).op, ComplexMatrix::identity(2) - adjoint_times(t1, t1)) < 1e-15);
    CHECK(brehmer_recursive(ce, Subset::full(2), 0.05).spectrum.min_eig < 0.0);
    CHECK_THROWS_AS(brehmer_recursive(ce, Subset::full(2), -1.0), Error);
}

TEST_CASE("direct and recursive agree on the corpus") {
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 30)) {
        for (double t : dyadic_grid(0, 10)) {
            const std::vector<ComplexMatrix> table = brehmer_table(fam, t);
            for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
                const Subset k{mask};
                double scale = 1.0;
                for (Subset c : k.subsets()) {
                    const double n = spectral_norm(evaluate(fam, scaled_indicator(fam.d(), c, t)));
                    scale += n * n;
                }
                const BrehmerSample direct = brehmer_direct(fam, k, t);
                CHECK(spectral_norm(direct.op - table[mask]) <= 1e-10 * scale);
                CHECK(spectral_norm(brehmer_recursive(fam, k, t).op - table[mask]) <= 1e-12 * scale);
            }
        }
        for (std::uint32_t mask = 1; mask < (1u << fam.d()); ++mask) {
            CHECK(brehmer_direct(fam, Subset{mask}, 0.0).op.frobenius_norm() <= 1e-12);
        }
    }
}

TEST_CASE("positivity_scan examples") {
    const auto contractive = testing::scalar_family({cplx{-0.3, 1.0}});
    CHECK(positivity_scan(contractive, {1.0, 0.5, 1e-3}).pass);
    CHECK(positivity_scan(contractive, default_scan_grid()).pass);

    const ScanReport fail = positivity_scan(testing::hand_counterexample(0.8), dyadic_grid(1, 10));
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.witness.has_value());
    CHECK(fail.witness->k == Subset::full(2));

    ZooSpec spec;
    spec.kind = ZooKind::diagonal_normal;
    spec.d = 3;
    spec.dim = 5;
    spec.seed = 4;
    CHECK(positivity_scan(make_zoo(spec), default_scan_grid()).pass);

    CHECK_THROWS_AS(positivity_scan(contractive, {0.5, 0.0}), Error);
    CHECK_THROWS_AS(positivity_scan(contractive, {}), Error);
}

TEST_CASE("refined witness search finds negativity below the default grid") {
    // alpha just above the window edge: beta is small and negative.
    const auto fam = testing::hand_counterexample(0.7072);
    const BetaResult b = beta(fam);
    REQUIRE(b.beta < -1e-6);
    const auto w = refine_negative_witness(fam);
    REQUIRE(w.has_value());
    CHECK(w->min_eig < w->threshold);
    CHECK(w->k == Subset::full(2));
}

TEST_CASE("asymptotics examples") {
    const AsymptoticsReport scalar = check_asymptotics(testing::scalar_family({-1.0}), Subset::single(0));
    CHECK(std::abs(scalar.fitted_exponent - 2.0) < 0.05);
    for (std::size_t i = 0; i < scalar.t.size(); ++i) {
        const double t = scalar.t[i];
        const double exact = std::abs((1.0 - std::exp(-2.0 * t)) - 2.0 * t);
        CHECK(std::abs(scalar.remainder_norms[i] - exact) <= 1e-15 + 1e-12 * exact);
    }

    const AsymptoticsReport empty = check_asymptotics(testing::hand_counterexample(0.8), Subset::empty());
    for (double r : empty.remainder_norms) CHECK(r == 0.0);
    CHECK(std::isinf(empty.fitted_exponent));

    const AsymptoticsReport ce = check_asymptotics(testing::hand_counterexample(0.8), Subset::full(2));
    CHECK(ce.fitted_exponent >= 2.9);
}
