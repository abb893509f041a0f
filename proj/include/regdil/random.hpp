#pragma once

#include <random>

#include "regdil/matrix.hpp"

namespace regdil {

using Rng = std::mt19937_64;

/// Entries (g1 + i g2)/sqrt(2) with g1, g2 standard normal, times scale.
ComplexMatrix random_gaussian(Rng& rng, std::size_t dim, double scale = 1.0);
/// Hermitian with spectral norm exactly `norm` (unless dim == 0).
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim, double norm = 1.0);
/// exp(iH) for a random Hermitian H with ||H|| = pi.
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);

}  // namespace regdil
