#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace regdil::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitIdentityFailure = 2,
    kExitNegative = 3,      // not dilatable / scan FAIL / witness found
    kExitInconclusive = 4,  // inconclusive verdict / search exhausted / no sign change
};

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string output;  // empty = stdout
    std::string format = "json";
    std::optional<double> tol;
    std::string grid;  // scan: "first:last" dyadic exponents or comma-separated t; torus: points per dim
    std::uint64_t seed = 1;
    std::optional<std::size_t> threads;
    std::string kind = "triangular";
    std::size_t d = 2;
    double alpha = 0.8;
    std::vector<double> omega;
    std::size_t dim = 2;
    std::size_t dim1 = 1;
    std::size_t dim2 = 1;
    std::size_t degree = 2;
    bool no_alpha_window = false;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 24;
};

/// Parses argv and runs the subcommand; returns the process exit code.
int run(int argc, char** argv);

/// Runs an already parsed configuration.
int execute(const RunConfig& config);

}  // namespace regdil::cli
