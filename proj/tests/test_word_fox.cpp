#include "doctest.h"

#include <random>

#include "metarep/fox.hpp"
#include "metarep/word.hpp"

using namespace metarep;

TEST_CASE("free reduction and basic word operations") {
    Word x = Word::generator(0), y = Word::generator(1);
    CHECK((x * x.inverse()).is_identity());
    CHECK((x * y * y.inverse() * x.inverse()).is_identity());
    Word w = x * y * x.inverse();
    CHECK(w.length() == 3);
    CHECK(w.pow(0).is_identity());
    CHECK(w.pow(-2) == w.inverse() * w.inverse());
    CHECK(x.pow(3).exponent_sum(0) == 3);
    std::vector<int> letters{1, -2, 1};
    CHECK(Word::from_signed_letters(letters) == x * y.inverse() * x);
}

TEST_CASE("fox derivative base cases") {
    Word x0 = Word::generator(0), x1 = Word::generator(1);

    SUBCASE("product rule base case: d(x0 x1)/dx0 = 1") {
        auto d = fox_derivative(x0 * x1, 0);
        CHECK(d == FreeGroupRingElt::one());
    }
    SUBCASE("inverse rule: d(x0^-1)/dx0 = -x0^-1") {
        auto d = fox_derivative(x0.inverse(), 0);
        FreeGroupRingElt want = FreeGroupRingElt::of(x0.inverse(), -1);
        CHECK(d == want);
    }
    SUBCASE("d(x0 x1 x0^-1)/dx0 = 1 - x0 x1 x0^-1") {
        auto d = fox_derivative(x0 * x1 * x0.inverse(), 0);
        FreeGroupRingElt want = FreeGroupRingElt::one();
        want.add(x0 * x1 * x0.inverse(), -1);
        CHECK(d == want);
    }
    SUBCASE("d(x1)/dx0 = 0") {
        CHECK(fox_derivative(x1, 0).is_zero());
    }
}

TEST_CASE("fox fundamental identity in the free group ring") {
    // sum_k d(w)/dx_k * (x_k - 1) = w - 1, as elements of Z[F]
    std::mt19937_64 rng(0x5EED);
    std::uniform_int_distribution<int> gen(0, 2), len(1, 9), sgn(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i)
            w = w * Word::generator(gen(rng), sgn(rng) ? 1 : -1);
        FreeGroupRingElt lhs;
        for (int k = 0; k <= 2; ++k) {
            FreeGroupRingElt xk_minus_1 = FreeGroupRingElt::of(Word::generator(k));
            xk_minus_1.add(Word(), -1);
            lhs = lhs + fox_derivative(w, k) * xk_minus_1;
        }
        FreeGroupRingElt rhs = FreeGroupRingElt::of(w);
        rhs.add(Word(), -1);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("fox product rule as a property") {
    std::mt19937_64 rng(0xF0CCA);
    std::uniform_int_distribution<int> gen(0, 2), len(0, 6), sgn(0, 1);
    auto random_word = [&] {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i)
            w = w * Word::generator(gen(rng), sgn(rng) ? 1 : -1);
        return w;
    };
    for (int trial = 0; trial < 40; ++trial) {
        Word u = random_word(), v = random_word();
        for (int k = 0; k <= 2; ++k) {
            auto lhs = fox_derivative(u * v, k);
            auto rhs = fox_derivative(u, k) + fox_derivative(v, k).translated(u);
            CHECK(lhs == rhs);
        }
    }
}
