#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "regdil/brehmer.hpp"
#include "regdil/dissipation.hpp"
#include "regdil/polybounds.hpp"
#include "regdil/semigroup.hpp"
#include "regdil/transforms.hpp"

namespace regdil::io {

using json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "regdil 0.1.0";

/// FNV-1a 64-bit of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);
/// Parses text; throws ParseError with the parser message.
json parse(std::string_view text);
/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

/// Finite numbers as JSON numbers, otherwise "inf", "-inf" or "nan".
json number(double x);
/// 1-based indices.
json subset_to_json(Subset k);
Subset subset_from_json(const json& j, std::size_t d);

json family_to_json(const GeneratorFamily& fam);
/// Structural parsing only; call validate_family afterwards. Throws ParseError.
GeneratorFamily family_from_json(const json& j);

json polynomial_to_json(const LaurentPolynomial& p);
LaurentPolynomial polynomial_from_json(const json& j);

json certificate_to_json(const Certificate& cert);
json scan_to_json(const ScanReport& report);
/// Columns K,t,min_eig,threshold with K written as 1-based indices joined by '+'.
std::string scan_to_csv(const ScanReport& report);
json boundary_to_json(const BoundaryReport& report);
json witness_to_json(const ViolationWitness& w);
json asymptotics_to_json(const AsymptoticsReport& report);
json bound_check_to_json(const BoundCheckReport& report);
json torus_sup_to_json(const TorusSup& sup);

}  // namespace regdil::io
