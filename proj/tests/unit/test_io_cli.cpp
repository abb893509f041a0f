#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <random>

#include "cli.hpp"
#include "fixtures.hpp"
#include "regdil/error.hpp"
#include "regdil/io.hpp"

using namespace regdil;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "regdil_io_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "regdil-cli");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("family JSON round trip is bit-exact") {
    for (const GeneratorFamily& fam : build_corpus(testing::kCorpusSeed, 15)) {
        const std::string text = io::dump(io::family_to_json(fam));
        const GeneratorFamily back = io::family_from_json(io::parse(text));
        CHECK(back == fam);
        CHECK(io::dump(io::family_to_json(back)) == text);
    }
}

TEST_CASE("family JSON errors") {
    CHECK_THROWS_AS(io::parse("{bad"), Error);
    CHECK_THROWS_AS(io::family_from_json(io::parse(R"({"d": 1})")), Error);
    CHECK_THROWS_AS(io::family_from_json(io::parse(R"({"d": 2, "dim": 1, "generators": [[[[0,0]]]]})")), Error);
    CHECK_THROWS_AS(io::family_from_json(io::parse(R"({"d": 1, "dim": 1, "generators": [[["x"]]]})")), Error);
}

TEST_CASE("polynomial JSON round trip") {
    LaurentPolynomial p(2);
    p.add_term({1, -2}, cplx{0.1, -0.3});
    p.add_term({0, 0}, 1.0 / 3.0);
    CHECK(io::polynomial_from_json(io::parse(io::dump(io::polynomial_to_json(p)))) == p);
    CHECK_THROWS_AS(io::polynomial_from_json(io::parse(R"({"d": 2, "terms": [{"n": [1], "c": [1, 0]}]})")), Error);
}

TEST_CASE("certificate JSON layout") {
    const io::json j = io::certificate_to_json(certify(testing::hand_counterexample(0.8)));
    CHECK(j["verdict"] == "NOT_REGULARLY_DILATABLE");
    CHECK(j["argmin_K"] == io::json::array({1, 2}));
    CHECK(j["per_K"].size() == 4);
    CHECK(j["tolerances"].contains("certification"));
}

TEST_CASE("fnv1a reference values") {
    CHECK(io::fnv1a_hex("") == "cbf29ce484222325");
    CHECK(io::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("CLI exit codes and pipeline") {
    const fs::path dir = scratch_dir();
    const std::string ce = (dir / "ce.json").string();
    const std::string diag = (dir / "diag.json").string();
    CHECK(run_cli({"zoo", "--kind", "triangular", "--d", "2", "--alpha", "0.8", "--output", ce}) == 0);
    CHECK(run_cli({"certify", "--input", ce, "--output", (dir / "cert.json").string()}) == 3);
    CHECK(run_cli({"falsify", "--input", ce, "--output", (dir / "w.json").string()}) == 3);
    const io::json w = io::parse(io::read_file((dir / "w.json").string()));
    CHECK(w["result"]["witness"]["margin"].get<double>() > 0.0);

    CHECK(run_cli({"zoo", "--kind", "diagonal", "--d", "3", "--dim", "4", "--seed", "3", "--output", diag}) == 0);
    CHECK(run_cli({"certify", "--input", diag, "--output", (dir / "c2.json").string()}) == 0);
    CHECK(run_cli({"brehmer-scan", "--input", diag, "--output", (dir / "s.csv").string(), "--format", "csv"}) == 0);
    CHECK(run_cli({"brehmer-scan", "--input", ce, "--grid", "1:10", "--output", (dir / "s.json").string()}) == 3);
    CHECK(run_cli({"falsify", "--input", diag, "--output", (dir / "nw.json").string()}) == 0);
    CHECK(run_cli({"beta", "--input", ce, "--omega", "1,1", "--output", (dir / "b.json").string()}) == 0);
    CHECK(run_cli({"boundary", "--input", ce, "--output", (dir / "bd.json").string()}) == 0);
    CHECK(run_cli({"verify-identities", "--count", "6", "--output", (dir / "vi.json").string()}) == 0);

    const std::string bad = (dir / "bad.json").string();
    io::write_file(bad, "{not json");
    CHECK(run_cli({"certify", "--input", bad}) == 1);
    CHECK(run_cli({"certify", "--input", (dir / "missing.json").string()}) == 1);
    CHECK(run_cli({"certify", "--input", ce, "--format", "csv"}) == 1);
    CHECK(run_cli({"no-such-command"}) == 1);

    // Skew-Hermitian generators sit exactly on the boundary.
    GeneratorFamily unitary = testing::family_of({ComplexMatrix{{cplx{0, 1}}}});
    const std::string u = (dir / "u.json").string();
    io::write_file(u, io::dump(io::family_to_json(unitary)));
    CHECK(run_cli({"certify", "--input", u, "--output", (dir / "cu.json").string()}) == 4);
}

TEST_CASE("CLI reports are deterministic") {
    const fs::path dir = scratch_dir();
    const std::string a = (dir / "a.json").string();
    const std::string b = (dir / "b.json").string();
    CHECK(run_cli({"verify-identities", "--count", "4", "--seed", "9", "--output", a}) == 0);
    CHECK(run_cli({"verify-identities", "--count", "4", "--seed", "9", "--threads", "2", "--output", b}) == 0);
    CHECK(io::read_file(a) == io::read_file(b));
}
