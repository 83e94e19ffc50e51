#include <doctest.h>

#include "framelet/lattice.hpp"

using namespace framelet;

TEST_CASE("validate dilation") {
    auto m = validate_dilation({{2, 0}, {0, 2}});
    CHECK(m.abs_det == 4);
    auto q = validate_dilation({{1, 1}, {1, -1}});
    CHECK(q.abs_det == 2);
    CHECK_THROWS(validate_dilation({{1, 0}, {0, 2}}));
    CHECK_THROWS(validate_dilation({{1, 2}}));
    CHECK_THROWS(validate_dilation({{1}}));
    CHECK(default_field_order(m) == 4);
    CHECK(default_field_order(validate_dilation({{3}})) == 12);
}

TEST_CASE("gamma cosets") {
    CHECK(gamma_cosets(IntMatrix{{2, 0}, {0, 2}}) == std::vector<IntVec>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(gamma_cosets(IntMatrix{{1, 1}, {1, -1}}) == std::vector<IntVec>{{0, 0}, {1, 0}});
    CHECK(gamma_cosets(IntMatrix{{2}}) == std::vector<IntVec>{{0}, {1}});
}

TEST_CASE("omega cosets") {
    auto w = omega_cosets(validate_dilation({{2, 0}, {0, 2}}));
    REQUIRE(w.size() == 4);
    CHECK(w[1] == RatVec{Rational(1, 2), 0});
    CHECK(w[2] == RatVec{0, Rational(1, 2)});
    auto q = omega_cosets(validate_dilation({{1, 1}, {1, -1}}));
    REQUIRE(q.size() == 2);
    CHECK(q[1] == RatVec{Rational(1, 2), Rational(1, 2)});
    auto d1 = omega_cosets(validate_dilation({{2}}));
    CHECK(d1 == std::vector<RatVec>{{0}, {Rational(1, 2)}});
}

TEST_CASE("coset properties") {
    for (IntMatrix m : {IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{1, 1}, {1, -1}}, IntMatrix{{1, -1}, {1, 1}},
                        IntMatrix{{3}}, IntMatrix{{2, 1}, {0, 2}}}) {
        auto dm = validate_dilation(m);
        auto g = gamma_cosets(dm);
        CHECK(static_cast<long long>(g.size()) == dm.abs_det);
        // every integer point in a window lies in exactly one coset
        int d = dm.dim;
        for (int x = -3; x <= 3; ++x)
            for (int y = -3; y <= 3; ++y) {
                IntVec k = d == 1 ? IntVec{x} : IntVec{x, y};
                int hits = 0;
                RatMatrix inv = rat_inverse(m);
                for (const auto& gm : g) {
                    IntVec diff(d);
                    for (int i = 0; i < d; ++i) diff[i] = k[i] - gm[i];
                    RatVec v = rat_apply(inv, diff);
                    bool integral = true;
                    for (auto& q : v) integral = integral && q.get_den() == 1;
                    hits += integral;
                }
                CHECK(hits == 1);
            }
        auto w = omega_cosets(dm);
        CHECK(w.size() == g.size());
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = i + 1; j < w.size(); ++j) {
                bool integral = true;
                for (int l = 0; l < d; ++l) integral = integral && Rational(w[i][l] - w[j][l]).get_den() == 1;
                CHECK(!integral);
            }
    }
}
