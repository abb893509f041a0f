#include "regdil/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "regdil/error.hpp"

namespace regdil::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

double to_double(const json& j, const char* what) {
    if (!j.is_number()) parse_error(std::string(what) + " must be a number");
    return j.get<double>();
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) parse_error("complex entries must be [re, im]");
    return {to_double(j[0], "real part"), to_double(j[1], "imaginary part")};
}

json complex_to_json(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

std::string subset_label(Subset k) {
    if (k.is_empty()) return "{}";
    std::string out;
    for (std::size_t i : k.indices()) out += (out.empty() ? "" : "+") + std::to_string(i + 1);
    return out;
}

}  // namespace

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadParameters, "cannot write " + path);
    out << contents;
    if (!out) throw Error(ErrorCode::BadParameters, "write failed for " + path);
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        parse_error(e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

json subset_to_json(Subset k) {
    json out = json::array();
    for (std::size_t i : k.indices()) out.push_back(i + 1);
    return out;
}

Subset subset_from_json(const json& j, std::size_t d) {
    if (!j.is_array()) parse_error("subset must be an array of 1-based indices");
    Subset k;
    for (const json& e : j) {
        if (!e.is_number_integer()) parse_error("subset entries must be integers");
        const long long i = e.get<long long>();
        if (i < 1 || static_cast<std::size_t>(i) > d) {
            throw Error(ErrorCode::IndexOutOfRange, "subset index " + std::to_string(i) + " outside 1.." + std::to_string(d));
        }
        k = k.with(static_cast<std::size_t>(i - 1));
    }
    return k;
}

json family_to_json(const GeneratorFamily& fam) {
    json gens = json::array();
    for (const ComplexMatrix& a : fam.generators) {
        json rows = json::array();
        for (std::size_t r = 0; r < a.dim(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < a.dim(); ++c) row.push_back(complex_to_json(a(r, c)));
            rows.push_back(std::move(row));
        }
        gens.push_back(std::move(rows));
    }
    return {{"d", fam.d()}, {"dim", fam.dim()}, {"generators", std::move(gens)}, {"label", fam.label}};
}

GeneratorFamily family_from_json(const json& j) {
    const json& d_field = field(j, "d");
    const json& dim_field = field(j, "dim");
    if (!d_field.is_number_integer() || !dim_field.is_number_integer()) parse_error("\"d\" and \"dim\" must be integers");
    const long long d = d_field.get<long long>();
    const long long dim = dim_field.get<long long>();
    if (d < 1) parse_error("\"d\" must be >= 1");
    if (dim < 1) parse_error("\"dim\" must be >= 1");
    const json& gens = field(j, "generators");
    if (!gens.is_array() || static_cast<long long>(gens.size()) != d) {
        throw Error(ErrorCode::DimensionMismatch, "\"generators\" must hold d = " + std::to_string(d) + " matrices");
    }
    GeneratorFamily fam;
    if (j.contains("label")) {
        if (!j["label"].is_string()) parse_error("\"label\" must be a string");
        fam.label = j["label"].get<std::string>();
    }
    for (const json& g : gens) {
        if (!g.is_array() || static_cast<long long>(g.size()) != dim) {
            throw Error(ErrorCode::DimensionMismatch, "each generator must have dim rows");
        }
        ComplexMatrix a(static_cast<std::size_t>(dim));
        for (std::size_t r = 0; r < a.dim(); ++r) {
            const json& row = g[r];
            if (!row.is_array() || row.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "each row must have dim entries");
            for (std::size_t c = 0; c < a.dim(); ++c) a(r, c) = complex_from_json(row[c]);
        }
        fam.generators.push_back(std::move(a));
    }
    return fam;
}

json polynomial_to_json(const LaurentPolynomial& p) {
    json terms = json::array();
    for (const auto& [n, c] : p.terms()) terms.push_back({{"n", n}, {"c", complex_to_json(c)}});
    return {{"d", p.d()}, {"terms", std::move(terms)}};
}

LaurentPolynomial polynomial_from_json(const json& j) {
    const json& d_field = field(j, "d");
    if (!d_field.is_number_integer() || d_field.get<long long>() < 1) parse_error("\"d\" must be a positive integer");
    const auto d = static_cast<std::size_t>(d_field.get<long long>());
    const json& terms = field(j, "terms");
    if (!terms.is_array()) parse_error("\"terms\" must be an array");
    LaurentPolynomial p(d);
    for (const json& t : terms) {
        const json& n = field(t, "n");
        if (!n.is_array()) parse_error("\"n\" must be an array of integers");
        if (n.size() != d) throw Error(ErrorCode::ArityMismatch, "exponent length differs from d");
        Exponent e;
        for (const json& x : n) {
            if (!x.is_number_integer()) parse_error("exponents must be integers");
            e.push_back(x.get<int>());
        }
        p.add_term(e, complex_from_json(field(t, "c")));
    }
    return p;
}

json certificate_to_json(const Certificate& cert) {
    json per_k = json::array();
    for (const auto& [k, e] : cert.per_k) per_k.push_back({{"K", subset_to_json(k)}, {"min_eig", number(e)}});
    json out = {
        {"verdict", std::string(to_string(cert.verdict))},
        {"beta", number(cert.beta)},
        {"argmin_K", subset_to_json(cert.argmin)},
        {"d", cert.d},
        {"tolerances",
         {{"certification", number(cert.certification_tol)},
          {"relative", number(cert.relative_tol)},
          {"hermiticity", number(cert.hermiticity_tol)}}},
        {"per_K", std::move(per_k)},
    };
    if (!cert.note.empty()) out["note"] = cert.note;
    return out;
}

json scan_to_json(const ScanReport& report) {
    json rows = json::array();
    for (const ScanRow& r : report.rows) {
        rows.push_back({{"K", subset_to_json(r.k)}, {"t", number(r.t)}, {"min_eig", number(r.min_eig)},
                        {"threshold", number(r.threshold)}});
    }
    json out = {{"verdict", report.pass ? "PASS" : "FAIL"},
                {"tolerances", {{"psd", number(report.tolerance)}}},
                {"grid", report.grid},
                {"rows", std::move(rows)}};
    if (report.witness) {
        out["witness"] = {{"K", subset_to_json(report.witness->k)},
                          {"t", number(report.witness->t)},
                          {"min_eig", number(report.witness->min_eig)}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

std::string scan_to_csv(const ScanReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "K,t,min_eig,threshold\n";
    for (const ScanRow& r : report.rows) {
        os << subset_label(r.k) << ',' << r.t << ',' << r.min_eig << ',' << r.threshold << '\n';
    }
    return os.str();
}

json boundary_to_json(const BoundaryReport& report) {
    json omega = json::array();
    for (double w : report.omega_boundary) omega.push_back(number(w));
    return {{"omega_boundary", std::move(omega)},
            {"s_boundary", number(report.s_boundary)},
            {"beta_at_boundary", number(report.beta_at_boundary)},
            {"iterations", report.iterations},
            {"hi_used", number(report.hi_used)}};
}

json witness_to_json(const ViolationWitness& w) {
    return {{"K", subset_to_json(w.k)},
            {"t", number(w.t)},
            {"alpha", number(w.alpha)},
            {"polynomial", polynomial_to_json(w.polynomial)},
            {"operator_norm", number(w.operator_norm)},
            {"torus_sup", number(w.torus_sup)},
            {"torus_bracket", {{"lower", number(w.torus_lower)}, {"upper", number(w.torus_upper)},
                               {"converged", w.bracket_converged}}},
            {"margin", number(w.margin)},
            {"margin_over_upper", number(w.operator_norm - w.torus_upper)},
            {"S_K_t_min_eig", number(w.fd_min_eig)},
            {"S_K_t_max_eig", number(w.fd_max_eig)}};
}

json asymptotics_to_json(const AsymptoticsReport& report) {
    json rows = json::array();
    for (std::size_t i = 0; i < report.t.size(); ++i) {
        rows.push_back({{"t", number(report.t[i])}, {"remainder", number(report.remainder_norms[i])}});
    }
    return {{"K", subset_to_json(report.k)},
            {"fitted_exponent", number(report.fitted_exponent)},
            {"fitted_constant", number(report.fitted_constant)},
            {"fit_residual", number(report.fit_residual)},
            {"fit_t", report.fit_t},
            {"rows", std::move(rows)}};
}

json bound_check_to_json(const BoundCheckReport& report) {
    json rows = json::array();
    for (const BoundCheckRow& r : report.rows) {
        rows.push_back({{"poly", r.poly_index},
                        {"time", r.time_index},
                        {"operator_norm", number(r.operator_norm)},
                        {"torus_lower", number(r.torus_lower)},
                        {"torus_upper", number(r.torus_upper)},
                        {"pass", r.pass}});
    }
    return {{"verdict", report.pass ? "PASS" : "FAIL"}, {"tolerance", number(report.tolerance)}, {"rows", std::move(rows)}};
}

json torus_sup_to_json(const TorusSup& sup) {
    return {{"lower", number(sup.lower)},
            {"upper", number(sup.upper)},
            {"argmax_theta", sup.argmax_theta},
            {"grid_per_dim", sup.grid_per_dim},
            {"cells_evaluated", sup.cells_evaluated},
            {"converged", sup.converged}};
}

}  // namespace regdil::io
