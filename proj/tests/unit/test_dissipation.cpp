#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "regdil/dissipation.hpp"
#include "regdil/error.hpp"

using namespace regdil;
using regdil::testing::rel_diff;

TEST_CASE("scalar example") {
    const auto fam = testing::scalar_family({-2.0});
    const DissipationTable table = dissipation_recursive(fam);
    CHECK(table[Subset::empty()].op == ComplexMatrix::identity(1));
    CHECK(table[Subset::single(0)].op(0, 0) == cplx{2.0});
    CHECK(table.beta == 1.0);
    CHECK(table.argmin == Subset::empty());
    const BetaResult b = beta(fam);
    CHECK(b.beta == 1.0);
    CHECK(b.argmin.is_empty());
}

TEST_CASE("counterexample dissipation operators match the closed form") {
    for (std::size_t d = 2; d <= 4; ++d) {
        for (double alpha : {0.3, 0.6, 0.8}) {
            const auto fam = testing::hand_counterexample(alpha, d);
            const DissipationTable table = dissipation_recursive(fam);
            for (const auto& entry : table.entries) {
                const std::size_t k = entry.k.size();
                CHECK(rel_diff(entry.op, testing::counterexample_s(alpha, k)) < 1e-14);
                const double closed = testing::sym2_min_eig(1.0, k * alpha, 1.0 + k * (k - 1.0) * alpha * alpha);
                CHECK(std::abs(entry.spectrum.min_eig - closed) < 1e-12);
                const double sign_expected = 1.0 - alpha * alpha * k;
                if (std::abs(sign_expected) > 1e-12) CHECK((entry.spectrum.min_eig > 0) == (sign_expected > 0));
            }
        }
    }
    const DissipationTable t = dissipation_recursive(testing::hand_counterexample(0.8));
    CHECK(std::abs(t[Subset::full(2)].spectrum.min_eig - (-0.08328)) < 1e-4);
    CHECK(t.beta < 0.0);
    CHECK(t.argmin == Subset::full(2));
}

TEST_CASE("skew-Hermitian diagonal generators have vanishing dissipation") {
    const std::vector<cplx> d1{cplx{0, 1}, cplx{0, -2}};
    const std::vector<cplx> d2{cplx{0, 0.5}, cplx{0, 3}};
    const auto fam = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
    const DissipationTable table = dissipation_recursive(fam);
    for (const auto& e : table.entries) {
        if (!e.k.is_empty()) CHECK(e.op.frobenius_norm() == 0.0);
    }
    CHECK(table.beta == 0.0);
    const Certificate cert = certify(fam);
    CHECK(cert.verdict == Verdict::inconclusive);
    CHECK_FALSE(cert.note.empty());
}

TEST_CASE("oracle examples") {
    const auto fam = testing::hand_counterexample(0.8, 3);
    CHECK(dissipation_oracle(fam, Subset::empty()) == ComplexMatrix::identity(2));
    for (std::size_t i = 0; i < 3; ++i) {
        const ComplexMatrix expected = -1.0 * fam[i].hermitian_part();
        CHECK(rel_diff(dissipation_oracle(fam, Subset::single(i)), expected) < 1e-15);
    }
}

TEST_CASE("recursion matches oracle on the corpus") {
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 40)) {
        const DissipationTable table = dissipation_recursive(fam);
        for (const auto& entry : table.entries) {
            double prod = 1.0;
            for (std::size_t i : entry.k.indices()) prod *= spectral_norm(fam[i]);
            const ComplexMatrix oracle = dissipation_oracle(fam, entry.k);
            CHECK(spectral_norm(entry.op - oracle) <= 1e-10 * (1.0 + prod));
            CHECK(entry.spectrum.hermiticity_defect <= 1e-10 * (1.0 + entry.op.frobenius_norm()));
            if (entry.k.size() == 1) {
                const std::size_t i = entry.k.indices().front();
                CHECK(rel_diff(entry.op, -0.5 * (fam[i] + fam[i].adjoint())) <= 1e-12);
            }
        }
        CHECK(table.entries.front().op == ComplexMatrix::identity(fam.dim()));
    }
}

TEST_CASE("finite-difference dissipation") {
    const auto scalar = testing::scalar_family({-1.0});
    const ComplexMatrix s = finite_difference_dissipation(scalar, Subset::single(0), 0.1);
    CHECK(std::abs(s(0, 0).real() - (1.0 - std::exp(-0.1)) / 0.1) < 1e-14);
    CHECK(std::abs(s(0, 0).real() - 0.951626) < 1e-6);

    const auto ce = testing::hand_counterexample(0.8);
    CHECK(finite_difference_dissipation(ce, Subset::empty(), 0.3) == ComplexMatrix::identity(2));
    CHECK_THROWS_AS(finite_difference_dissipation(ce, Subset::full(2), 0.0), Error);

    // First-order convergence: error / t stays bounded and roughly constant.
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 12)) {
        const DissipationTable table = dissipation_recursive(fam);
        const Subset k = Subset::full(fam.d());
        double prev_ratio = -1.0;
        for (double t : {1e-1, 1e-2, 1e-3}) {
            const double err = spectral_norm(finite_difference_dissipation(fam, k, t) - table[k].op);
            const double ratio = err / t;
            CHECK(std::isfinite(ratio));
            if (prev_ratio > 1e-6) CHECK(ratio <= 2.0 * prev_ratio + 1e-6);
            prev_ratio = ratio;
        }
    }
}

TEST_CASE("beta and certification examples") {
    const auto scalar = testing::scalar_family({-2.0});
    CHECK(certify(scalar).verdict == Verdict::regularly_dilatable);

    const Certificate ce = certify(testing::hand_counterexample(0.8));
    CHECK(ce.verdict == Verdict::not_regularly_dilatable);
    CHECK(std::abs(ce.beta - testing::sym2_min_eig(1.0, 1.6, 2.28)) < 1e-12);
    CHECK(ce.argmin == Subset::full(2));

    const DissipationTable sixty = dissipation_recursive(testing::hand_counterexample(0.6));
    CHECK(sixty.beta >= 0.0);
    for (const auto& e : sixty.entries) {
        if (e.k.size() < 2) CHECK(e.spectrum.min_eig > 0.0);
    }

    ZooSpec spec;
    spec.kind = ZooKind::diagonal_normal;
    spec.d = 3;
    spec.dim = 4;
    spec.real_hi = -0.1;
    CHECK(certify(make_zoo(spec)).verdict == Verdict::regularly_dilatable);
}

TEST_CASE("beta ties break toward the smallest bitmask") {
    // d = 2, A = diag(-1) for both: S_{1} = S_{2} = 1, S_{12} = 1; all equal to S_empty.
    const auto fam = testing::scalar_family({-1.0, -1.0});
    CHECK(beta(fam).argmin == Subset::empty());
}

TEST_CASE("strong-commuting product formula") {
    const std::vector<cplx> d1{cplx{-1.0, 2.0}, cplx{-0.5, 0.0}};
    const std::vector<cplx> d2{cplx{-3.0, -1.0}, cplx{-0.25, 1.0}};
    const auto fam = testing::family_of({ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)});
    const std::vector<cplx> prod{3.0, 0.125};
    CHECK(rel_diff(strong_commuting_product_formula(fam, Subset::full(2)), ComplexMatrix::diagonal(prod)) < 1e-15);

    CHECK_THROWS_AS(strong_commuting_product_formula(testing::hand_counterexample(0.8), Subset::full(2)), Error);

    ZooSpec spec;
    spec.kind = ZooKind::diagonal_normal;
    spec.d = 3;
    spec.dim = 6;
    spec.random_basis = true;
    spec.seed = 8;
    const GeneratorFamily zoo = make_zoo(spec);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const Subset k{mask};
        CHECK(rel_diff(strong_commuting_product_formula(zoo, k), dissipation_oracle(zoo, k)) <= 1e-10);
    }
}

TEST_CASE("dimension budget") {
    GeneratorFamily fam;
    for (int i = 0; i < 17; ++i) fam.generators.push_back(ComplexMatrix{{-1.0}});
    CHECK_THROWS_AS(dissipation_recursive(fam), Error);
}
