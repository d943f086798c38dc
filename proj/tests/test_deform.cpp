#include "doctest.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "metarep/deform.hpp"
#include "metarep/errors.hpp"

using namespace metarep;

namespace {
Representation metab_rep(const KnotPresentation& p, long n) {
    auto hn = std::make_shared<FinAbT>(branched_homology(p, n));
    return build_rep(p, n, orbit_representatives(hn, n)[0]);
}
} // namespace

TEST_CASE("cocycle space dimensions for the figure-eight at n=2") {
    auto p = parse_pd(load_table("4_1"));
    auto cs = cocycle_spaces(p, metab_rep(p, 2));
    CHECK(cs.dim_z1 == 4);
    CHECK(cs.dim_b1 == 3); // n^2 - 1, irreducible
    CHECK(cs.dim_h1 == 1);
    REQUIRE(cs.h1_reps.size() == 1);
    // H1 representatives are orthogonal to B1
    for (const auto& h : cs.h1_reps)
        for (const auto& b : cs.b1) {
            std::complex<double> ip = 0.0;
            for (size_t k = 0; k < h.values.size(); ++k)
                ip += (b.values[k].adjoint() * h.values[k]).trace();
            CHECK(std::abs(ip) < 1e-8);
        }
}

TEST_CASE("formal deformations of the figure-eight at n=2 to order 4") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto series = solve_formal(p, rep, cs.h1_reps[0], 4);
    REQUIRE(series.residuals.size() == 4);
    for (double r : series.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("a coboundary deforms with vanishing residuals at every order") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto series = solve_formal(p, rep, cs.b1[0], 4);
    for (double r : series.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("formal deformations of the trefoil at n=3 to order 3") {
    auto p = parse_braid("s1 s1 s1", 2);
    auto rep = metab_rep(p, 3);
    auto cs = cocycle_spaces(p, rep);
    CHECK(cs.dim_h1 == 2);
    auto series = solve_formal(p, rep, cs.h1_reps[0], 3);
    for (double r : series.residuals) CHECK(r <= 1e-9);
}

TEST_CASE("linearization consistency: order-1 condition is the cocycle condition") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    for (const auto& z : cs.z1) {
        auto series = solve_formal(p, rep, z, 2);
        CHECK(series.residuals[0] <= 1e-10);
    }
    Cochain1 junk;
    junk.values.assign(static_cast<size_t>(p.num_generators), Eigen::MatrixXcd::Zero(2, 2));
    junk.values[0](0, 1) = 1.0; // not a cocycle
    CHECK_THROWS_AS(solve_formal(p, rep, junk, 2), ObstructionNonzero);
}

TEST_CASE("gradient check: Newton Jacobian at t=0 matches finite differences") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2).to_float();
    auto cs = cocycle_spaces(p, rep);
    const Cochain1& dir = cs.h1_reps[0];
    const double h = 1e-6;
    for (const auto& r : p.relators) {
        Representation plus = rep, minus = rep;
        for (size_t k = 0; k < rep.flt.size(); ++k) {
            plus.flt[k] = (h * dir.values[k]).exp() * rep.flt[k];
            minus.flt[k] = (-h * dir.values[k]).exp() * rep.flt[k];
            plus.flt_inv[k] = plus.flt[k].inverse();
            minus.flt_inv[k] = minus.flt[k].inverse();
        }
        Eigen::MatrixXcd fd = (plus.eval_float(r) - minus.eval_float(r)) / (2 * h);
        Eigen::MatrixXcd lin = cochain_on_word(p, rep, dir.values, r) * rep.eval_float(r);
        CHECK((fd - lin).norm() <= 1e-4 * std::max(1.0, lin.norm()));
    }
}

TEST_CASE("newton continuation produces certified non-metabelian representations") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto steps = newton_deform(p, rep, cs.h1_reps[0], {0.02, 0.1});
    REQUIRE(steps.size() == 2);
    for (const auto& s : steps) {
        CHECK(s.residual <= 1e-10);
        CHECK(commutant_dimension(s.rep) == 1);
    }
    auto base = probe_character(p, rep);
    double dist = 0.0;
    for (size_t i = 0; i < base.size(); ++i)
        dist = std::max(dist, std::abs(steps[1].probe[i] - base[i]));
    CHECK(dist > 1e-3);
    CHECK(certify_nonmetabelian(steps[1].rep, p, 2));
}

TEST_CASE("t = 0 returns the representation itself") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto steps = newton_deform(p, rep, cs.h1_reps[0], {0.0});
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].residual <= 1e-12);
    auto base = probe_character(p, rep);
    for (size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(steps[0].probe[i] - base[i]) <= 1e-9);
}

TEST_CASE("coboundary direction deforms by conjugation: character is unchanged") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto steps = newton_deform(p, rep, cs.b1[0], {0.05});
    auto base = probe_character(p, rep);
    for (size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(steps[0].probe[i] - base[i]) <= 1e-9);
    CHECK(!certify_nonmetabelian(steps[0].rep, p, 2));
}

TEST_CASE("the metabelian representation itself is not certified") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    CHECK(!certify_nonmetabelian(rep, p, 2));
    Representation conj = rep.to_float();
    Eigen::MatrixXcd s(2, 2);
    s << 1.0, 0.3, std::complex<double>(0, 0.2), 1.1;
    for (size_t k = 0; k < conj.flt.size(); ++k) {
        conj.flt[k] = s * conj.flt[k] * s.inverse();
        conj.flt_inv[k] = conj.flt[k].inverse();
    }
    CHECK(!certify_nonmetabelian(conj, p, 2));
}

TEST_CASE("h1 budget: independent integrable directions number n-1") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    long successes = 0;
    for (const auto& dir : cs.h1_reps) {
        auto steps = newton_deform(p, rep, dir, {0.05});
        if (!steps.empty() && steps[0].residual <= 1e-10) ++successes;
    }
    CHECK(successes == 1); // n - 1 at n = 2
}

TEST_CASE("certification refuses infinite families") {
    auto tre = parse_braid("s1 s1 s1", 2);
    auto rep = metab_rep(tre, 2).to_float();
    CHECK_THROWS_AS(certify_nonmetabelian(rep, tre, 6), InfiniteFamily);
}

TEST_CASE("path character smoothness: probe moves linearly in t") {
    auto p = parse_pd(load_table("4_1"));
    auto rep = metab_rep(p, 2);
    auto cs = cocycle_spaces(p, rep);
    auto steps = newton_deform(p, rep, cs.h1_reps[0], {0.02, 0.04});
    auto base = probe_character(p, rep);
    double d1 = 0.0, d2 = 0.0;
    for (size_t i = 0; i < base.size(); ++i) {
        d1 = std::max(d1, std::abs(steps[0].probe[i] - base[i]));
        d2 = std::max(d2, std::abs(steps[1].probe[i] - base[i]));
    }
    double ratio = d2 / std::max(d1, 1e-300) / 2.0;
    CHECK(ratio > 0.3);
    CHECK(ratio < 3.0);
}
