#pragma once

#include <cmath>
#include <vector>

#include "regdil/linalg.hpp"
#include "regdil/semigroup.hpp"

namespace regdil::testing {

inline constexpr std::uint64_t kCorpusSeed = 20261016;

inline GeneratorFamily family_of(std::vector<ComplexMatrix> gens, std::string label = "test") {
    return GeneratorFamily{std::move(gens), std::move(label)};
}

inline GeneratorFamily scalar_family(std::vector<cplx> values) {
    std::vector<ComplexMatrix> gens;
    for (cplx v : values) gens.push_back(ComplexMatrix{{v}});
    return family_of(std::move(gens), "scalar");
}

/// A_i = [[-1, -2 alpha], [0, -1]] for i = 1..d, written out by hand.
inline GeneratorFamily hand_counterexample(double alpha, std::size_t d = 2) {
    std::vector<ComplexMatrix> gens(d, ComplexMatrix{{-1.0, -2.0 * alpha}, {0.0, -1.0}});
    return family_of(std::move(gens), "hand counterexample");
}

/// Closed form of S_{T,K} for hand_counterexample with |K| = k:
/// [[1, k alpha], [k alpha, 1 + k(k-1) alpha^2]].
inline ComplexMatrix counterexample_s(double alpha, std::size_t k) {
    const double kk = static_cast<double>(k);
    return ComplexMatrix{{1.0, kk * alpha}, {kk * alpha, 1.0 + kk * (kk - 1.0) * alpha * alpha}};
}

/// Smaller eigenvalue of the real symmetric [[a, b], [b, c]].
inline double sym2_min_eig(double a, double b, double c) {
    const double tr = a + c;
    const double det = a * c - b * b;
    return 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
}

inline double rel_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm() / (1.0 + b.frobenius_norm());
}

}  // namespace regdil::testing
