#include "doctest.h"

#include <cmath>

#include "metarep/alexander.hpp"
#include "metarep/errors.hpp"
#include "metarep/presentation.hpp"

using namespace metarep;

namespace {
LaurentPoly torus_alexander_oracle(long p, long q) {
    // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))
    auto cyc = [](long k) { return LaurentPoly::t_power(k) - LaurentPoly::constant(1); };
    return (cyc(p * q) * cyc(1)).exact_div(cyc(p)).exact_div(cyc(q)).normalized();
}
} // namespace

TEST_CASE("alexander matrix shapes and minors") {
    auto tre = parse_braid("s1 s1 s1", 2);
    auto m = alexander_matrix(tre);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(alexander_minors_gcd(tre).equals_up_to_unit(alexander_poly(tre)));

    auto uk = unknot();
    CHECK(alexander_matrix(uk).rows() == 0);
    CHECK(alexander_poly(uk) == LaurentPoly::constant(1));
}

TEST_CASE("alexander polynomials of standard knots") {
    CHECK(alexander_poly(torus_knot(2, 3)).str() == "t^2 - t + 1");
    CHECK(alexander_poly(parse_pd(load_table("4_1"))).str() == "t^2 - 3t + 1");
    CHECK(alexander_poly(torus_knot(2, 3)) == torus_alexander_oracle(2, 3));
    CHECK(alexander_poly(torus_knot(3, 5)) == torus_alexander_oracle(3, 5));
    CHECK(alexander_poly(torus_knot(2, 7)) == torus_alexander_oracle(2, 7));
    // 10_124 is the (3,5)-torus knot
    CHECK(alexander_poly(parse_pd(load_table("10_124")))
              .equals_up_to_unit(torus_alexander_oracle(3, 5)));
}

TEST_CASE("alexander polynomial normalization and symmetry") {
    for (const char* name : {"3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"}) {
        auto d = alexander_poly(parse_pd(load_table(name)));
        CHECK(d.min_degree() == 0);
        CHECK(d.coeff(d.max_degree()) > 0);
        mpz_class at1 = d.eval_int(1);
        CHECK(abs(at1) == 1);
        CHECK(d.is_palindromic_up_to_unit());
    }
}

TEST_CASE("branched cover homology by Smith form") {
    auto tre = parse_braid("s1 s1 s1", 2);

    SUBCASE("trefoil n=2: Z/3") {
        auto h = branched_homology(tre, 2);
        CHECK(h.free_rank == 0);
        REQUIRE(h.invariant_factors.size() == 1);
        CHECK(h.invariant_factors[0] == 3);
        CHECK(*torsion_order_resultant(alexander_poly(tre), 2) == 3);
    }
    SUBCASE("trefoil n=3: Z/2 + Z/2") {
        auto h = branched_homology(tre, 3);
        CHECK(h.free_rank == 0);
        REQUIRE(h.invariant_factors.size() == 2);
        CHECK(h.invariant_factors[0] == 2);
        CHECK(h.invariant_factors[1] == 2);
    }
    SUBCASE("trefoil n=6: first Betti number 2") {
        auto h = branched_homology(tre, 6);
        CHECK(h.free_rank == 2);
        CHECK(!torsion_order_resultant(alexander_poly(tre), 6).has_value());
    }
    SUBCASE("n=1 gives the trivial group for any knot") {
        for (const char* name : {"3_1", "4_1", "5_2"}) {
            auto h = branched_homology(parse_pd(load_table(name)), 1);
            CHECK(h.free_rank == 0);
            CHECK(h.invariant_factors.empty());
        }
    }
    SUBCASE("figure-eight n=2: Z/5") {
        auto h = branched_homology(parse_pd(load_table("4_1")), 2);
        REQUIRE(h.invariant_factors.size() == 1);
        CHECK(h.invariant_factors[0] == 5);
    }
}

TEST_CASE("SNF group order equals the resultant (cross-oracle)") {
    for (const char* name : {"3_1", "4_1", "5_2", "6_1"}) {
        auto p = parse_pd(load_table(name));
        auto delta = alexander_poly(p);
        for (long n = 1; n <= 6; ++n) {
            auto h = branched_homology(p, n);
            auto tor = torsion_order_resultant(delta, n);
            if (h.free_rank == 0) {
                REQUIRE(tor.has_value());
                CHECK(h.torsion_order() == *tor);
            } else {
                CHECK(!tor.has_value());
            }
        }
    }
}

TEST_CASE("free rank counts unit-circle roots of Delta") {
    // free_rank(H_1(L_n)) = #roots of Delta that are n-th roots of unity
    auto p = parse_braid("s1 s1 s1", 2); // roots are primitive 6th roots of unity
    auto delta = alexander_poly(p);
    for (long n : {1L, 2L, 3L, 6L, 12L}) {
        auto h = branched_homology(p, n);
        long count = 0;
        for (long j = 0; j < n; ++j) {
            std::complex<double> z = std::polar(1.0, 2.0 * M_PI * j / n);
            if (std::abs(delta.eval(z)) < 1e-8) ++count;
        }
        CHECK(h.free_rank == count);
    }
}

TEST_CASE("t-action properties of branched homology") {
    for (const char* name : {"3_1", "4_1", "5_2"}) {
        auto p = parse_pd(load_table(name));
        for (long n = 2; n <= 5; ++n) {
            auto h = branched_homology(p, n);
            const long d = h.dim();
            if (d == 0) continue;
            // t^n = identity on the group
            ZMat acc = zmat_identity(d);
            for (long i = 0; i < n; ++i) acc = zmat_mul(h.t_matrix, acc);
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) {
                    mpz_class v = acc(i, j) - (i == j ? 1 : 0);
                    if (i < static_cast<long>(h.invariant_factors.size()))
                        v %= h.invariant_factors[static_cast<size_t>(i)];
                    CHECK(v == 0);
                }
        }
    }
}

TEST_CASE("multiplication by t-1 is onto H/(t^n-1)") {
    // the computable shadow of fact (i): (t-1) H = H after imposing t^n = 1
    for (const char* name : {"3_1", "4_1"}) {
        auto p = parse_pd(load_table(name));
        for (long n = 1; n <= 5; ++n) {
            auto h = branched_homology(p, n);
            const long d = h.dim();
            if (d == 0) continue;
            // cokernel of (T - I) together with the group relations
            ZMat m = zmat_zero(d, d + static_cast<long>(h.invariant_factors.size()));
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j)
                    m(i, j) = h.t_matrix(i, j) - (i == j ? 1 : 0);
            for (size_t i = 0; i < h.invariant_factors.size(); ++i)
                m(static_cast<long>(i), d + static_cast<long>(i)) = h.invariant_factors[i];
            auto s = smith_form(m);
            CHECK(s.rank() == d);
            CHECK(s.invariant_factors().empty());
        }
    }
}

TEST_CASE("divisor functoriality of the covers") {
    // the natural surjection H/(t^n-1) -> H/(t^d-1) intertwines the t-actions
    auto p = parse_pd(load_table("4_1"));
    for (long n : {4L, 6L}) {
        auto hn = branched_homology(p, n);
        for (long d : {2L}) {
            if (n % d != 0) continue;
            auto hd = branched_homology(p, d);
            // probe words: h(x) classes of mu^-eps x for each generator
            for (int k = 0; k < p.num_generators; ++k) {
                Word w = p.meridian.pow(-p.abelian_degrees[static_cast<size_t>(k)]) *
                         Word::generator(k);
                auto cn = hn.class_of_word(w);
                auto cd = hd.class_of_word(w);
                // image of t*w under the surjection = t*(image of w)
                Word tw = p.meridian.pow(-1) * w * p.meridian;
                CHECK(hd.class_of_word(tw) == hd.t_apply(cd));
                CHECK(hn.class_of_word(tw) == hn.t_apply(cn));
            }
        }
    }
}

TEST_CASE("torsion orders by exact resultant") {
    LaurentPoly f8(0, 1); // t^2 - 3t + 1
    f8.set(1, -3);
    f8.set(2, 1);
    CHECK(*torsion_order_resultant(f8, 2) == 5);
    LaurentPoly tre(0, 1); // t^2 - t + 1
    tre.set(1, -1);
    tre.set(2, 1);
    CHECK(!torsion_order_resultant(tre, 6).has_value());
    CHECK(*torsion_order_resultant(LaurentPoly::constant(1), 12) == 1);
}

TEST_CASE("mahler measure") {
    LaurentPoly f8(0, 1);
    f8.set(1, -3);
    f8.set(2, 1);
    double golden2 = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(mahler(f8) - golden2) < 1e-10);
    LaurentPoly tre(0, 1);
    tre.set(1, -1);
    tre.set(2, 1);
    CHECK(std::abs(mahler(tre) - 1.0) < 1e-10);
    CHECK(mahler(LaurentPoly::constant(1)) == 1.0);
    LaurentPoly lead2 = LaurentPoly::constant(2);
    CHECK(std::abs(mahler(lead2) - 2.0) < 1e-12);
}

TEST_CASE("silver-williams ratio") {
    auto f8 = parse_pd(load_table("4_1"));
    auto r = sw_ratio(f8, 50);
    REQUIRE(r.has_value());
    double lnm = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::abs(*r - lnm) < 0.05);
    CHECK(*sw_ratio(unknot(), 7) == 0.0);
    auto tre = parse_braid("s1 s1 s1", 2);
    CHECK(!sw_ratio(tre, 6).has_value());
}
