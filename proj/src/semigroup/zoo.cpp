#include <cmath>
#include <sstream>
#include <string>

#include "regdil/error.hpp"
#include "regdil/linalg.hpp"
#include "regdil/random.hpp"
#include "regdil/semigroup.hpp"

namespace regdil {

std::string_view to_string(ZooKind kind) noexcept {
    switch (kind) {
        case ZooKind::diagonal_normal: return "diagonal_normal";
        case ZooKind::single_matrix_polynomials: return "single_matrix_polynomials";
        case ZooKind::triangular_counterexample: return "triangular_counterexample";
    }
    return "unknown";
}

std::optional<ZooKind> parse_zoo_kind(std::string_view name) noexcept {
    if (name == "diagonal_normal" || name == "diagonal") return ZooKind::diagonal_normal;
    if (name == "single_matrix_polynomials" || name == "polynomials") {
        return ZooKind::single_matrix_polynomials;
    }
    if (name == "triangular_counterexample" || name == "triangular") {
        return ZooKind::triangular_counterexample;
    }
    return std::nullopt;
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorCode::BadParameters, message);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

GeneratorFamily make_diagonal(const ZooSpec& spec, Rng& rng) {
    require(spec.dim >= 1, "diagonal_normal needs dim >= 1");
    require(spec.real_lo <= spec.real_hi, "diagonal_normal needs real_lo <= real_hi");
    GeneratorFamily fam;
    std::vector<cplx> diag(spec.dim);
    for (std::size_t i = 0; i < spec.d; ++i) {
        for (cplx& z : diag) {
            const double re = uniform(rng, spec.real_lo, spec.real_hi);
            const double im = spec.imag_scale > 0.0 ? uniform(rng, -spec.imag_scale, spec.imag_scale) : 0.0;
            z = {re, im};
        }
        fam.generators.push_back(ComplexMatrix::diagonal(diag));
    }
    if (spec.random_basis) {
        const ComplexMatrix u = random_unitary(rng, spec.dim);
        for (auto& a : fam.generators) a = u * a * u.adjoint();
    }
    fam.label = "diagonal_normal d=" + std::to_string(spec.d) + " dim=" + std::to_string(spec.dim) +
                " seed=" + std::to_string(spec.seed) + (spec.random_basis ? " rotated" : "");
    return fam;
}

GeneratorFamily make_polynomials(const ZooSpec& spec, Rng& rng) {
    require(spec.dim >= 1, "single_matrix_polynomials needs dim >= 1");
    require(spec.degree >= 1, "single_matrix_polynomials needs degree >= 1");
    ComplexMatrix base = random_gaussian(rng, spec.dim);
    const double base_norm = spectral_norm(base);
    if (base_norm > 0.0) base *= 1.0 / base_norm;

    std::vector<ComplexMatrix> powers{ComplexMatrix::identity(spec.dim)};
    for (std::size_t k = 1; k <= spec.degree; ++k) powers.push_back(powers.back() * base);

    GeneratorFamily fam;
    std::string shifts;
    std::normal_distribution<double> normal(0.0, 1.0);
    const double coeff_scale = 1.0 / std::sqrt(static_cast<double>(spec.degree + 1));
    for (std::size_t i = 0; i < spec.d; ++i) {
        ComplexMatrix a(spec.dim);
        for (std::size_t k = 0; k <= spec.degree; ++k) {
            const double re = normal(rng);
            const double im = normal(rng);
            a.add_scaled(cplx{re, im} * coeff_scale, powers[k]);
        }
        // Make the generator dissipative: Re A <= -margin.
        const double shift = herm_min_eig(a.hermitian_part()).max_eig + spec.margin;
        a.add_scaled(-shift, ComplexMatrix::identity(spec.dim));
        fam.generators.push_back(std::move(a));
        shifts += (i == 0 ? "" : ",") + fmt_double(shift);
    }
    fam.label = "single_matrix_polynomials d=" + std::to_string(spec.d) +
                " dim=" + std::to_string(spec.dim) + " degree=" + std::to_string(spec.degree) +
                " seed=" + std::to_string(spec.seed) + " shifts=[" + shifts + "]";
    return fam;
}

// Orthonormal columns (rows x cols, row-major) by modified Gram-Schmidt.
std::vector<cplx> random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
    for (;;) {
        const ComplexMatrix g = random_gaussian(rng, rows);
        std::vector<cplx> q(rows * cols);
        bool degenerate = false;
        for (std::size_t c = 0; c < cols && !degenerate; ++c) {
            for (std::size_t r = 0; r < rows; ++r) q[r * cols + c] = g(r, c);
            for (std::size_t p = 0; p < c; ++p) {
                cplx dot{};
                for (std::size_t r = 0; r < rows; ++r) dot += std::conj(q[r * cols + p]) * q[r * cols + c];
                for (std::size_t r = 0; r < rows; ++r) q[r * cols + c] -= dot * q[r * cols + p];
            }
            double norm = 0.0;
            for (std::size_t r = 0; r < rows; ++r) norm += std::norm(q[r * cols + c]);
            norm = std::sqrt(norm);
            degenerate = norm < 1e-8;
            for (std::size_t r = 0; r < rows && !degenerate; ++r) q[r * cols + c] /= norm;
        }
        if (!degenerate) return q;
    }
}

GeneratorFamily make_triangular(const ZooSpec& spec, Rng& rng) {
    require(spec.dim1 >= 1 && spec.dim2 >= 1, "triangular_counterexample needs dim1, dim2 >= 1");
    require(spec.dim2 <= spec.dim1, "triangular_counterexample needs dim2 <= dim1 (isometry H2 -> H1)");
    const double mod = std::abs(spec.alpha);
    if (spec.enforce_alpha_window) {
        const double lo = 1.0 / std::sqrt(static_cast<double>(spec.d));
        const double hi = spec.d > 1 ? 1.0 / std::sqrt(static_cast<double>(spec.d - 1)) : INFINITY;
        require(mod > lo && mod < hi, "|alpha| = " + fmt_double(mod) + " outside (" + fmt_double(lo) +
                                          ", " + fmt_double(hi) + ")");
    } else {
        require(mod > 0.0 && mod <= 1.0, "|alpha| must lie in (0, 1] for contractive D_i");
    }

    const std::size_t n = spec.dim1 + spec.dim2;
    GeneratorFamily fam;
    for (std::size_t i = 0; i < spec.d; ++i) {
        std::vector<cplx> iso;
        if (spec.isometry == IsometryChoice::random) {
            iso = random_isometry(rng, spec.dim1, spec.dim2);
        } else {
            iso.assign(spec.dim1 * spec.dim2, cplx{});
            for (std::size_t k = 0; k < spec.dim2; ++k) iso[k * spec.dim2 + k] = 1.0;
        }
        // A_i = -1 + [[0, -2 D_i], [0, 0]] with D_i = alpha V_i.
        ComplexMatrix a = ComplexMatrix::scalar(n, -1.0);
        for (std::size_t r = 0; r < spec.dim1; ++r)
            for (std::size_t c = 0; c < spec.dim2; ++c)
                a(r, spec.dim1 + c) = -2.0 * spec.alpha * iso[r * spec.dim2 + c];
        fam.generators.push_back(std::move(a));
    }
    std::ostringstream label;
    label.precision(17);
    label << "triangular_counterexample d=" << spec.d << " dim1=" << spec.dim1
          << " dim2=" << spec.dim2 << " alpha=" << spec.alpha.real();
    if (spec.alpha.imag() != 0.0) label << (spec.alpha.imag() < 0 ? "" : "+") << spec.alpha.imag() << "i";
    if (spec.isometry == IsometryChoice::random) label << " isometry=random seed=" << spec.seed;
    fam.label = label.str();
    return fam;
}

}  // namespace

GeneratorFamily make_zoo(const ZooSpec& spec) {
    require(spec.d >= 1 && spec.d <= kMaxGenerators,
            "d must lie in 1.." + std::to_string(kMaxGenerators));
    Rng rng(spec.seed);
    GeneratorFamily fam;
    switch (spec.kind) {
        case ZooKind::diagonal_normal: fam = make_diagonal(spec, rng); break;
        case ZooKind::single_matrix_polynomials: fam = make_polynomials(spec, rng); break;
        case ZooKind::triangular_counterexample: fam = make_triangular(spec, rng); break;
    }
    validate_family(fam);
    return fam;
}

std::vector<GeneratorFamily> build_corpus(std::uint64_t seed, std::size_t count) {
    std::vector<GeneratorFamily> corpus;
    corpus.reserve(count);
    Rng rng(seed);
    static constexpr std::size_t kDims[] = {1, 2, 3, 4, 6, 8, 16};
    static constexpr std::pair<std::size_t, std::size_t> kSplits[] = {{1, 1}, {2, 1}, {2, 2}, {3, 2},
                                                                      {4, 4}, {8, 8}};
    for (std::size_t i = 0; i < count; ++i) {
        ZooSpec spec;
        spec.seed = rng();
        const std::size_t round = i / 3;
        switch (i % 3) {
            case 0:
                spec.kind = ZooKind::diagonal_normal;
                spec.d = 1 + round % 4;
                spec.dim = kDims[round % std::size(kDims)];
                // Alternate strictly dissipative and partly expansive spectra.
                spec.real_lo = -2.0;
                spec.real_hi = round % 2 == 0 ? -0.1 : 0.5;
                spec.random_basis = round % 3 == 1;
                break;
            case 1:
                spec.kind = ZooKind::single_matrix_polynomials;
                spec.d = 1 + (round + 1) % 4;
                spec.dim = kDims[(round + 2) % std::size(kDims)];
                spec.degree = 1 + round % 3;
                spec.margin = round % 2 == 0 ? 0.3 : 0.05;
                break;
            default: {
                spec.kind = ZooKind::triangular_counterexample;
                spec.d = 2 + round % 3;
                const auto [d1, d2] = kSplits[round % std::size(kSplits)];
                spec.dim1 = d1;
                spec.dim2 = d2;
                const double lo = 1.0 / static_cast<double>(spec.d);
                const double hi = 1.0 / static_cast<double>(spec.d - 1);
                double mod_sq = 0.0;
                if (round % 4 == 3) {
                    // Below the window: completely super dissipative.
                    spec.enforce_alpha_window = false;
                    mod_sq = 0.6 * lo;
                } else {
                    mod_sq = lo + (0.25 + 0.25 * static_cast<double>(round % 3)) * (hi - lo);
                }
                const double phase = round % 2 == 0 ? 0.0 : uniform(rng, -3.14159, 3.14159);
                spec.alpha = std::polar(std::sqrt(mod_sq), phase);
                spec.isometry = round % 5 == 4 ? IsometryChoice::random : IsometryChoice::identity_embedding;
                break;
            }
        }
        corpus.push_back(make_zoo(spec));
    }
    return corpus;
}

}  // namespace regdil
