#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "metarep/jsonio.hpp"

using namespace metarep;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/metarep_cli_out.txt";
    std::string cmd = std::string(METAREP_BIN) + " " + args + " > " + tmp + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

} // namespace

TEST_CASE("count reproduces the rank table and exit code 0") {
    auto r = run_cli("count 4_1 --n-range 1..7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("  7  120") != std::string::npos);
}

TEST_CASE("count marks infinite rows") {
    auto r = run_cli("count 3_1 --n-range 6..6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("infinite") != std::string::npos);
}

TEST_CASE("unknown knots exit 2") {
    auto r = run_cli("count 99_99 --n-range 1..2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("bad braid input exits 2") {
    auto r = run_cli("count braid:s7:2 --n-range 1..2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("pipeline on an infinite family exits 4") {
    auto r = run_cli("pipeline 3_1 --n 6");
    CHECK(r.exit_code == 4);
}

TEST_CASE("pipeline on the figure-eight at n=2 certifies a deformation") {
    auto r = run_cli("pipeline 4_1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("criterion: h1 = 1") != std::string::npos);
    CHECK(r.out.find("certified non-metabelian at t = 0.1: yes") != std::string::npos);
}

TEST_CASE("cover intractable cap exits 3") {
    auto r = run_cli("cover 4_1 --n 2 --cap 3");
    CHECK(r.exit_code == 3);
}

TEST_CASE("torus and braid specs are accepted") {
    CHECK(run_cli("cohomology torus:2,9 --n 3").exit_code == 0);
    CHECK(run_cli("count \"braid:s1 s1 s1:2\" --n-range 2..3").exit_code == 0);
    CHECK(run_cli("count torus:2,2 --n-range 1..2").exit_code == 2); // NotCoprime
}

TEST_CASE("json output is byte-identical across runs (fixed cfg and seed)") {
    auto a = run_cli("count 4_1 --n-range 1..9 --json");
    auto b = run_cli("count 4_1 --n-range 1..9 --json");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run_cli("deform 4_1 --n 2 --order 3 --steps 2 --json");
    auto d = run_cli("deform 4_1 --n 2 --order 3 --steps 2 --json");
    CHECK(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("emitted representations round-trip with identical verification") {
    auto r = run_cli("reps 4_1 --n 2 --all --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    auto p = parse_pd(load_table("4_1"));
    REQUIRE(j.at("representations").size() == 2);
    for (const auto& jr : j.at("representations")) {
        Representation rep = representation_from_json(jr);
        CHECK(rep.dim == 2);
        // identical verification results after re-ingestion
        CycMat id = cyc_identity(rep.field, rep.dim);
        for (const auto& rel : p.relators) CHECK(cyc_equal(rep.eval_exact(rel), id));
        for (const auto& m : rep.exact) {
            CHECK(is_special_linear(m));
            CHECK(is_unitary_exact(m));
        }
        CHECK(commutant_dimension(rep) == 1);
    }
}

TEST_CASE("sw table emits ratios") {
    auto r = run_cli("sw 4_1 --n-range 50..50 --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    double ratio = j.at("ratios").at(0).at("ratio").get<double>();
    CHECK(std::abs(ratio - 0.9624236501) < 1e-6);
}

TEST_CASE("twisted-alex trivial matches the Alexander polynomial") {
    auto r = run_cli("twisted-alex 4_1 --rep trivial --json");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("numerator").size() == 3); // t^2 - 3t + 1 has three terms
}
