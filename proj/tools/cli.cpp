#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <utility>

#include "regdil/brehmer.hpp"
#include "regdil/error.hpp"
#include "regdil/io.hpp"
#include "regdil/linalg.hpp"
#include "regdil/parallel.hpp"
#include "regdil/polybounds.hpp"
#include "regdil/random.hpp"
#include "regdil/transforms.hpp"

namespace regdil::cli {
namespace {

using io::json;

struct Loaded {
    GeneratorFamily family;
    std::string hash;
};

Loaded load_family(const RunConfig& config) {
    if (config.input.empty()) throw Error(ErrorCode::BadParameters, "--input is required");
    const std::string text = io::read_file(config.input);
    Loaded out{io::family_from_json(io::parse(text)), io::fnv1a_hex(text)};
    validate_family(out.family);
    return out;
}

json envelope(const RunConfig& config, const std::string& hash, json result) {
    return {{"tool", std::string(io::kToolVersion)},
            {"command", config.subcommand},
            {"input_hash", hash},
            {"seed", config.seed},
            {"result", std::move(result)}};
}

void emit(const RunConfig& config, const std::string& text) {
    if (config.output.empty()) {
        std::cout << text;
    } else {
        io::write_file(config.output, text);
    }
}

void require_json(const RunConfig& config) {
    if (config.format != "json") {
        throw Error(ErrorCode::BadParameters, "--format csv is only available for brehmer-scan");
    }
}

std::vector<double> scan_grid(const std::string& spec) {
    if (spec.empty()) return default_scan_grid();
    const auto colon = spec.find(':');
    try {
        if (colon != std::string::npos) {
            return dyadic_grid(std::stoi(spec.substr(0, colon)), std::stoi(spec.substr(colon + 1)));
        }
        std::vector<double> grid;
        std::stringstream ss(spec);
        for (std::string item; std::getline(ss, item, ',');) grid.push_back(std::stod(item));
        return grid;
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "cannot parse --grid \"" + spec + "\"");
    }
}

std::size_t torus_grid(const std::string& spec, std::size_t fallback) {
    if (spec.empty()) return fallback;
    try {
        const long long n = std::stoll(spec);
        if (n < 8) throw Error(ErrorCode::BadParameters, "--grid needs at least 8 points per dimension");
        return static_cast<std::size_t>(n);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "cannot parse --grid \"" + spec + "\"");
    }
}

int cmd_certify(const RunConfig& config) {
    require_json(config);
    const Loaded in = load_family(config);
    const Certificate cert = certify(in.family, config.tol.value_or(kCertificationTol));
    emit(config, io::dump(envelope(config, in.hash, io::certificate_to_json(cert))));
    switch (cert.verdict) {
        case Verdict::regularly_dilatable: return kExitOk;
        case Verdict::not_regularly_dilatable: return kExitNegative;
        case Verdict::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int cmd_scan(const RunConfig& config) {
    const Loaded in = load_family(config);
    const ScanReport report = positivity_scan(in.family, scan_grid(config.grid), config.tol.value_or(kPsdTol));
    if (config.format == "csv") {
        emit(config, io::scan_to_csv(report));
    } else {
        require_json(config);
        emit(config, io::dump(envelope(config, in.hash, io::scan_to_json(report))));
    }
    return report.pass ? kExitOk : kExitNegative;
}

int cmd_beta(const RunConfig& config) {
    require_json(config);
    const Loaded in = load_family(config);
    const double rel = config.tol.value_or(kCertificationTol);
    const DissipationTable table = dissipation_recursive(in.family, rel);
    json result = {{"beta", io::number(table.beta)},
                   {"argmin_K", io::subset_to_json(table.argmin)},
                   {"tolerance", io::number(table.tolerance)},
                   {"completely_dissipative", table.dissipative},
                   {"completely_super_dissipative", table.super_dissipative}};
    if (!config.omega.empty()) {
        const MembershipReport member = regular_exponent_membership(in.family, config.omega);
        const BetaShiftBracket bracket = beta_shift_bracket(in.family, config.omega);
        result["shift"] = {{"omega", config.omega},
                           {"beta", io::number(member.certificate.beta)},
                           {"argmin_K", io::subset_to_json(member.certificate.argmin)},
                           {"regular_exponent", member.member},
                           {"difference_bracket", {{"lower", io::number(bracket.lower)}, {"upper", io::number(bracket.upper)}}}};
    }
    emit(config, io::dump(envelope(config, in.hash, std::move(result))));
    return kExitOk;
}

int cmd_boundary(const RunConfig& config) {
    require_json(config);
    const Loaded in = load_family(config);
    RegularExponentQuery query;
    query.family = in.family;
    query.direction = config.omega;
    query.lo = config.lo;
    query.hi = config.hi;
    query.tolerance = config.tol.value_or(1e-8);
    query.expand_upper = true;
    const BoundaryReport report = boundary_bisect(query);
    json result = io::boundary_to_json(report);
    result["direction"] = config.omega.empty() ? std::vector<double>(in.family.d(), 1.0) : config.omega;
    result["tolerance"] = query.tolerance;
    emit(config, io::dump(envelope(config, in.hash, std::move(result))));
    return kExitOk;
}

int cmd_falsify(const RunConfig& config) {
    require_json(config);
    const Loaded in = load_family(config);
    FalsifyOptions options;
    options.rel_tol = config.tol.value_or(kCertificationTol);
    options.grid = torus_grid(config.grid, 0);
    const std::optional<ViolationWitness> witness = falsify(in.family, options);
    json result = witness ? json{{"outcome", "ViolationWitness"}, {"witness", io::witness_to_json(*witness)}}
                          : json{{"outcome", "NoWitness"}};
    emit(config, io::dump(envelope(config, in.hash, std::move(result))));
    return witness ? kExitNegative : kExitOk;
}

ZooSpec zoo_spec(const RunConfig& config) {
    const std::optional<ZooKind> kind = parse_zoo_kind(config.kind);
    if (!kind) throw Error(ErrorCode::BadParameters, "unknown --kind \"" + config.kind + "\"");
    ZooSpec spec;
    spec.kind = *kind;
    spec.d = config.d;
    spec.seed = config.seed;
    spec.dim = config.dim;
    spec.dim1 = config.dim1;
    spec.dim2 = config.dim2;
    spec.degree = config.degree;
    spec.alpha = config.alpha;
    spec.enforce_alpha_window = !config.no_alpha_window;
    return spec;
}

std::string config_hash(const RunConfig& config) {
    std::ostringstream os;
    os.precision(17);
    os << config.kind << '|' << config.d << '|' << config.seed << '|' << config.alpha << '|' << config.dim << '|'
       << config.dim1 << '|' << config.dim2 << '|' << config.degree << '|' << config.no_alpha_window << '|'
       << config.count;
    return io::fnv1a_hex(os.str());
}

int cmd_zoo(const RunConfig& config) {
    require_json(config);
    const GeneratorFamily fam = make_zoo(zoo_spec(config));
    // The bare family JSON, so the file feeds straight back into --input.
    emit(config, io::dump(io::family_to_json(fam)));
    return kExitOk;
}

struct Check {
    Check(std::string n, double r, double th) : name(std::move(n)), residual(r), threshold(th) {}

    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    bool skipped = false;
    std::string note;

    bool pass() const { return skipped || residual <= threshold; }
    json to_json() const {
        json j = {{"name", name}, {"pass", pass()}};
        if (skipped) {
            j["skipped"] = true;
            j["note"] = note;
        } else {
            j["residual"] = io::number(residual);
            j["threshold"] = threshold;
        }
        return j;
    }
};

bool all_invertible(const GeneratorFamily& fam) {
    for (const ComplexMatrix& a : fam.generators) {
        const std::vector<double> sv = singular_values(a);
        if (sv.back() == 0.0 || sv.back() < kInvertibilityTol * sv.front()) return false;
    }
    return true;
}

std::vector<Check> identity_checks(const GeneratorFamily& fam, Rng& rng) {
    std::vector<Check> checks;
    const std::size_t d = fam.d();
    const DissipationTable table = dissipation_recursive(fam);

    Check oracle{"dissipation_recursion_vs_partition_sum", 0.0, 1e-10};
    for (const auto& entry : table.entries) {
        const ComplexMatrix ref = dissipation_oracle(fam, entry.k);
        oracle.residual = std::max(oracle.residual, (entry.op - ref).frobenius_norm() / (1.0 + ref.frobenius_norm()));
    }
    checks.push_back(oracle);

    Check brehmer{"brehmer_direct_vs_recursive", 0.0, 1e-10};
    for (double t : {1.0, 0.125, 0.015625}) {
        const std::vector<ComplexMatrix> rec = brehmer_table(fam, t);
        for (std::uint32_t mask = 0; mask < rec.size(); ++mask) {
            const BrehmerSample direct = brehmer_direct(fam, Subset{mask}, t);
            brehmer.residual = std::max(brehmer.residual,
                                        (direct.op - rec[mask]).frobenius_norm() / (1.0 + direct.op.frobenius_norm()));
        }
    }
    checks.push_back(brehmer);

    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    ShiftVector omega(d);
    for (double& w : omega) w = unit(rng);
    const SelfSimilarityReport shift_report = verify_shift_self_similarity(fam, omega);
    checks.emplace_back("shift_self_similarity", shift_report.max_residual / (1.0 + shift_report.scale), 1e-9);

    Check inversion{"inversion_conjugation", 0.0, 1e-9};
    if (all_invertible(fam)) {
        const std::uint32_t count = std::uint32_t{1} << d;
        for (std::uint32_t p = 1; p < count; ++p) {
            for (std::uint32_t k = 0; k < count; ++k) {
                const ConjugationReport r = verify_inversion_conjugation(fam, Subset{p}, Subset{k});
                inversion.residual = std::max(inversion.residual, r.residual / r.scale);
            }
        }
    } else {
        inversion.skipped = true;
        inversion.note = "a generator is not invertible";
    }
    checks.push_back(inversion);

    Check strong{"strong_commuting_product_formula", 0.0, 1e-9};
    if (strong_commutation_report(fam).passes) {
        for (const auto& entry : table.entries) {
            const ComplexMatrix formula = strong_commuting_product_formula(fam, entry.k);
            strong.residual = std::max(strong.residual,
                                       (entry.op - formula).frobenius_norm() / (1.0 + formula.frobenius_norm()));
        }
    } else {
        strong.skipped = true;
        strong.note = "generators do not strongly commute";
    }
    checks.push_back(strong);

    const Subset full = Subset::full(d);
    const AsymptoticsReport asym = check_asymptotics(fam, full);
    // Remainder order |K| + 1: report the shortfall of the fitted exponent.
    Check order{"brehmer_asymptotics_order", 0.0, 0.25};
    order.residual = std::max(0.0, static_cast<double>(full.size()) + 1.0 - asym.fitted_exponent);
    checks.push_back(order);
    return checks;
}

int cmd_verify_identities(const RunConfig& config) {
    require_json(config);
    std::vector<GeneratorFamily> families;
    std::string hash;
    if (config.input.empty()) {
        families = build_corpus(config.seed, config.count);
        hash = config_hash(config);
    } else {
        Loaded in = load_family(config);
        families.push_back(std::move(in.family));
        hash = in.hash;
    }
    bool ok = true;
    json rows = json::array();
    for (std::size_t i = 0; i < families.size(); ++i) {
        Rng rng(config.seed * 1000003ULL + i);
        const std::vector<Check> checks = identity_checks(families[i], rng);
        json list = json::array();
        for (const Check& c : checks) {
            ok = ok && c.pass();
            list.push_back(c.to_json());
        }
        rows.push_back({{"label", families[i].label},
                        {"d", families[i].d()},
                        {"dim", families[i].dim()},
                        {"checks", std::move(list)}});
    }
    json result = {{"verdict", ok ? "PASS" : "FAIL"}, {"families", std::move(rows)}};
    emit(config, io::dump(envelope(config, hash, std::move(result))));
    return ok ? kExitOk : kExitIdentityFailure;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SearchExhausted:
        case ErrorCode::NoSignChange:
        case ErrorCode::MaxIterations:
            return kExitInconclusive;
        default:
            return kExitInputError;
    }
}

}  // namespace

int execute(const RunConfig& config) {
    try {
        if (config.threads) set_thread_count(*config.threads);
        if (config.format != "json" && config.format != "csv") {
            throw Error(ErrorCode::BadParameters, "--format must be json or csv");
        }
        const std::string& sub = config.subcommand;
        if (sub == "certify") return cmd_certify(config);
        if (sub == "brehmer-scan") return cmd_scan(config);
        if (sub == "beta") return cmd_beta(config);
        if (sub == "boundary") return cmd_boundary(config);
        if (sub == "falsify") return cmd_falsify(config);
        if (sub == "zoo") return cmd_zoo(config);
        if (sub == "verify-identities") return cmd_verify_identities(config);
        throw Error(ErrorCode::BadParameters, "unknown subcommand \"" + sub + "\"");
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Regular unitary dilation checks for commuting semigroups of matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig config;
    std::size_t threads = 0;
    app.add_option("--input", config.input, "Generator family JSON");
    app.add_option("--output", config.output, "Report path (default: stdout)");
    app.add_option("--format", config.format, "json or csv (csv: brehmer-scan only)");
    app.add_option("--tol", config.tol, "Tolerance override");
    app.add_option("--grid", config.grid,
                   "brehmer-scan: first:last dyadic exponents or comma-separated t; falsify: torus points per dimension");
    app.add_option("--seed", config.seed, "RNG seed");
    auto* threads_opt = app.add_option("--threads", threads, "Worker threads (0 = hardware); env REGDIL_THREADS");
    app.add_option("--kind", config.kind, "zoo kind: diagonal, polynomials, triangular");
    app.add_option("--d", config.d, "Number of generators");
    app.add_option("--alpha", config.alpha, "Off-diagonal scale for the triangular zoo");
    app.add_option("--omega", config.omega, "Comma-separated shift or direction vector")->delimiter(',');
    app.add_option("--dim", config.dim, "Matrix dimension (diagonal / polynomials)");
    app.add_option("--dim1", config.dim1, "Dimension of H1 (triangular)");
    app.add_option("--dim2", config.dim2, "Dimension of H2 (triangular)");
    app.add_option("--degree", config.degree, "Polynomial degree (polynomials)");
    app.add_flag("--no-alpha-window", config.no_alpha_window, "Allow any 0 < |alpha| <= 1 in the triangular zoo");
    app.add_option("--lo", config.lo, "boundary: lower end of the ray parameter");
    app.add_option("--hi", config.hi, "boundary: upper end of the ray parameter");
    app.add_option("--count", config.count, "verify-identities: corpus size when no --input is given");

    const std::pair<const char*, const char*> commands[] = {
        {"certify", "Decide regular dilatability from the minimum eigenvalue over all S_K"},
        {"brehmer-scan", "Minimum eigenvalues of the Brehmer operators over a t grid"},
        {"beta", "Dissipation margin, optionally after a shift --omega"},
        {"boundary", "Bisect the dilatability boundary along the ray --omega"},
        {"falsify", "Polynomial witness whose regular evaluation exceeds its torus sup"},
        {"zoo", "Write a generator family from a built-in construction"},
        {"verify-identities", "Check the internal identities on a family or a seeded corpus"},
    };
    for (const auto& [name, description] : commands) app.add_subcommand(name, description);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }
    if (threads_opt->count() > 0) config.threads = threads;
    config.subcommand = app.get_subcommands().front()->get_name();
    return execute(config);
}

}  // namespace regdil::cli
