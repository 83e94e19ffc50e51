#include <doctest.h>

#include <random>

#include "framelet/exactfield.hpp"

using namespace framelet;

namespace {

CycNum random_cyc(std::mt19937& rng, int L) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    std::vector<Rational> c(euler_phi(L));
    for (auto& q : c) {
        q = Rational(num(rng), den(rng));
        q.canonicalize();
    }
    return CycNum(L, c);
}

}  // namespace

TEST_CASE("rational strings") {
    CHECK(rational_to_string(parse_rational("6/4")) == "3/2");
    CHECK(rational_to_string(parse_rational("-3")) == "-3/1");
    CHECK(rational_to_string(parse_rational("+2")) == "2/1");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("cyclotomic polynomials") {
    auto p4 = cyclotomic_poly(4);
    REQUIRE(p4.size() == 3);
    CHECK(p4[0] == 1);
    CHECK(p4[1] == 0);
    CHECK(p4[2] == 1);
    auto p12 = cyclotomic_poly(12);   // x^4 - x^2 + 1
    REQUIRE(p12.size() == 5);
    CHECK(p12[0] == 1);
    CHECK(p12[2] == -1);
    CHECK(p12[4] == 1);
    CHECK(euler_phi(8) == 4);
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("field arithmetic examples") {
    CycNum i4 = CycNum::imag_unit(4);
    CHECK(i4 * i4 == CycNum(-1L));
    CHECK(field_arith(i4, i4, '*') == CycNum::one(4).scaled(-1));
    CycNum z8 = CycNum::zeta_pow(1, 8);
    CycNum z4 = z8 * z8 * z8 * z8;
    CHECK(z4 == CycNum(-1L));
    CycNum x = CycNum::one(8) + z8;
    CHECK(x * x.inverse() == CycNum::one(8));
    CHECK_THROWS(CycNum::zero(8).inverse());
    CHECK_THROWS(CycNum::one(4) + CycNum::one(8));
}

TEST_CASE("roots of unity and conjugation") {
    CHECK(root_of_unity(1, 2, 4) == CycNum(-1L));
    CHECK(root_of_unity(1, 4, 4) == -CycNum::imag_unit(4));
    CHECK(root_of_unity(3, 8, 8) == CycNum::zeta_pow(3, 8));
    CHECK_THROWS(root_of_unity(1, 3, 4));
    CHECK(galois_conj(CycNum::imag_unit(4)) == -CycNum::imag_unit(4));
    CHECK(galois_conj(CycNum(Rational(3, 5))) == CycNum(Rational(3, 5)));
    CHECK(galois_conj(CycNum::zeta_pow(1, 8)) == -CycNum::zeta_pow(3, 8));
    auto e = CycNum::imag_unit(8).approx();
    CHECK(std::abs(e - std::complex<double>(0, 1)) < 1e-12);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    for (int L : {4, 8, 12}) {
        for (int t = 0; t < 20; ++t) {
            CycNum a = random_cyc(rng, L), b = random_cyc(rng, L), c = random_cyc(rng, L);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycNum::one(L));
            CHECK((a * b).conj() == a.conj() * b.conj());
            CHECK(a.conj().conj() == a);
            auto exact = (a * b).approx();
            CHECK(std::abs(exact - a.approx() * b.approx()) < 1e-12);
        }
    }
}

TEST_CASE("scale tags compose") {
    ScaleTag s{1};
    CHECK(s.compose(ScaleTag{1}).e == 2);
}

TEST_CASE("unreduced rationals are canonicalized on entry") {
    CHECK(CycNum(Rational(6, 3)) == CycNum(2L));
    CHECK(CycNum(Rational(1, -2)) == CycNum(Rational(-1, 2)));
    CHECK(CycNum(4, {Rational(4, 2), Rational(0, 5)}) == CycNum(2L).lifted(4));
}
