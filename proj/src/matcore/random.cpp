#include "regdil/random.hpp"

#include <cmath>
#include <numbers>

#include "regdil/linalg.hpp"

namespace regdil {

ComplexMatrix random_gaussian(Rng& rng, std::size_t dim, double scale) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix m(dim);
    const double s = scale / std::numbers::sqrt2;
    for (cplx& z : m.data()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = cplx{s * re, s * im};
    }
    return m;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double norm) {
    ComplexMatrix h = random_gaussian(rng, dim).hermitian_part();
    const double current = spectral_norm(h);
    if (current > 0.0) h *= norm / current;
    return h;
}

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    ComplexMatrix h = random_hermitian(rng, dim, std::numbers::pi);
    return expm(h * cplx{0.0, 1.0});
}

}  // namespace regdil
