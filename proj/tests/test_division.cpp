#include <doctest.h>

#include "helpers.hpp"

using namespace framelet;
using namespace testutil;

TEST_CASE("divide at origin examples") {
    auto q = divide_at_origin(LPoly::nabla(2, Index::from({1, 1})), 2);
    REQUIRE(q.size() == 1);
    CHECK(q.begin()->first == Index::from({1, 1}));
    CHECK(q.begin()->second == LPoly::delta(2));
    auto q2 = divide_at_origin(LPoly::nabla(2, Index::from({2, 0})), 2);
    REQUIRE(q2.size() == 1);
    CHECK(q2.at(Index::from({2, 0})) == LPoly::delta(2));
    CHECK_THROWS(divide_at_origin(LPoly::delta(1), 1));
    CHECK_THROWS(divide_at_origin(LPoly::nabla(2, Index::from({1, 0})), 2));
    auto c = divide_at_origin(LPoly::nabla(1, Index::unit(0)), 1, Flavor::conj);
    CHECK(recompose_origin(c, 1, Flavor::conj) == LPoly::nabla(1, Index::unit(0)));
    CHECK(c.at(Index::unit(0)) == LPoly::monomial(1, Index::unit(0), CycNum(-1L)));
}

TEST_CASE("divide at point examples") {
    LPoly c = lp(1, {{{0}, 1}, {{1}, 1}});
    auto q = divide_at_point(c, 1, {Rational(1, 2)}, 4);
    CHECK(q.at(Index::unit(0)) == LPoly::delta(1));
    CHECK(recompose_point(q, 1, {Rational(1, 2)}, 4) == c);
    CHECK_THROWS(divide_at_point(LPoly::nabla(1, Index::unit(0)), 1, {Rational(1, 2)}, 4));
}

TEST_CASE("divide two point examples") {
    CHECK(divide_two_point(LPoly(2), 1, 1, {0, 0}, 4).empty());
    Index a = Index::from({1, 0}), b = Index::from({0, 1});
    LPoly c = nabla_factor(2, a, Flavor::conj) * LPoly::nabla(2, b);
    auto z = divide_two_point(c, 1, 1, {0, 0}, 4);
    CHECK(recompose_two_point(z, 2, {0, 0}, 4) == c);
    RatVec w{Rational(1, 2), 0};
    LPoly c2 = nabla_factor(2, a, Flavor::conj) * LPoly::nabla(2, b).shift(w, 4);
    auto z2 = divide_two_point(c2, 1, 1, w, 4);
    CHECK(recompose_two_point(z2, 2, w, 4) == c2);
    CHECK_THROWS(divide_two_point(LPoly::delta(2), 1, 1, w, 4));
}

TEST_CASE("randomized round trips") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dd(1, 2), mm(1, 3), den(2, 4);
    int fails = 0;
    for (int t = 0; t < 100; ++t) {
        int dim = dd(rng), m = mm(rng);
        Flavor f = t % 2 ? Flavor::conj : Flavor::plain;
        LPoly c = admissible_origin(rng, dim, m, 4, f);
        fails += recompose_origin(divide_at_origin(c, m, f), dim, f) != c;
    }
    CHECK(fails == 0);
    for (int t = 0; t < 100; ++t) {
        int dim = dd(rng), m = mm(rng);
        RatVec w = random_omega(rng, dim, 4);
        LPoly c = admissible_point(rng, dim, m, w, 4);
        fails += recompose_point(divide_at_point(c, m, w, 4), dim, w, 4) != c;
    }
    CHECK(fails == 0);
    for (int t = 0; t < 100; ++t) {
        int dim = dd(rng), m = mm(rng) % 3, mt = mm(rng) % 3;
        RatVec w = t % 2 ? RatVec(dim) : random_omega(rng, dim, 4);
        LPoly c = admissible_two_point(rng, dim, m, mt, w, 4);
        fails += recompose_two_point(divide_two_point(c, m, mt, w, 4), dim, w, 4) != c;
    }
    CHECK(fails == 0);
}

TEST_CASE("two point agrees with the linear-solve oracle") {
    std::mt19937 rng(12);
    for (int t = 0; t < 4; ++t) {
        RatVec w = t < 2 ? RatVec{Rational(1, 2)} : RatVec{Rational(1, 4)};
        LPoly c = admissible_two_point(rng, 1, 1 + t % 2, 1, w, 4);
        auto z = divide_two_point_solve(c, 1 + t % 2, 1, w, 4, 4);
        REQUIRE(z.has_value());
        CHECK(recompose_two_point(*z, 1, w, 4) == c);
        CHECK(recompose_two_point(divide_two_point(c, 1 + t % 2, 1, w, 4), 1, w, 4) == c);
    }
}
