#include <doctest.h>

#include "framelet/construct.hpp"
#include "framelet/dfrt.hpp"
#include "framelet/moments.hpp"
#include "helpers.hpp"

using namespace framelet;
using namespace testutil;

namespace {

const DilationMatrix& two() {
    static DilationMatrix m = validate_dilation({{2}});
    return m;
}

// random rational data supported in [0, side)^dim
LMatrix rational_data(std::mt19937& rng, int r, int dim, int side) {
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    LMatrix v(1, r, dim);
    for (int j = 0; j < r; ++j) {
        std::vector<LPoly::Term> terms;
        Index k;
        std::function<void(int)> fill = [&](int l) {
            if (l == dim) {
                terms.emplace_back(k, CycNum(Rational(num(rng), den(rng))));
                return;
            }
            for (k[l] = 0; k[l] < side; ++k[l]) fill(l + 1);
            k[l] = 0;
        };
        fill(0);
        v(0, j) = LPoly::from_terms(dim, terms);
    }
    return v;
}

DualFrameletBank haar_scalar_bank() {
    DualFrameletBank bank;
    bank.M = two();
    bank.N = {{1}};
    bank.a = LMatrix::scalar(haar_mask());
    bank.at = bank.a;
    bank.b = LMatrix::scalar(haar_highpass());
    bank.bt = bank.b;
    bank.theta = bank.thetat = bank.theta_inv = bank.thetat_inv = LMatrix::identity(1, 1);
    bank.s = 1;
    return bank;
}

const ConstructionTrace& hat_trace() {
    static ConstructionTrace t =
        construct_dual_multiframelet(vectorize_scalar_mask(hat_mask(), two(), {{2}}),
                                     vectorize_scalar_mask(hat_mask(), two(), {{2}}), two(), {{2}});
    return t;
}

// values of [p * u^*](M x) at x = k by a finite window sum
CycNum window_value(const Poly& p, const LPoly& u, const IntMatrix& M, const IntVec& k) {
    int dim = p.dim();
    IntVec x = int_apply(M, k);
    CycNum s;
    for (const auto& [j, c] : u.terms()) {
        IntVec y = x;
        for (int l = 0; l < dim; ++l) y[l] += j[l];
        s += p.eval(y) * c.conj();
    }
    return s;
}

}  // namespace

TEST_CASE("vectorization") {
    LMatrix e = vectorize(LPoly::delta(1), {{2}});
    CHECK(e(0, 0) == LPoly::delta(1));
    CHECK(e(0, 1).is_zero());
    std::mt19937 rng(3);
    for (IntMatrix N : {IntMatrix{{2}}, IntMatrix{{3}}, IntMatrix{{1, 1}, {1, -1}}}) {
        int dim = static_cast<int>(N.size());
        LPoly v = rational_data(rng, 1, dim, 5)(0, 0);
        CHECK(devectorize(vectorize(v, N), N) == v);
    }
    Poly k = Poly::coordinate(1, 0);
    PolySeq pv = poly_vectorize(k, {{2}});
    CHECK(pv.e[0] == k.scaled(CycNum(2L)));
    CHECK(pv.e[1] == k.scaled(CycNum(2L)) + Poly::constant(1, CycNum(1L)));
    auto back = poly_devectorize(pv, {{2}});
    REQUIRE(back);
    CHECK(*back == k);
    CHECK_FALSE(poly_devectorize({{k, k}}, {{2}}));
}

TEST_CASE("polynomial transition against window sums") {
    const int L = 4;
    std::mt19937 rng(9);
    CHECK(poly_transition({{Poly::coordinate(1, 0)}}, LMatrix::identity(1, 1), DilationMatrix{{{1}}, 1, 1}, L).e[0] ==
          Poly::coordinate(1, 0));
    // constant p, scalar u: p conj(u(0))
    LPoly u = haar_mask();
    auto c = poly_transition({{Poly::constant(1, CycNum(3L))}}, LMatrix::scalar(u), two(), L);
    CHECK(c.e[0] == Poly::constant(1, CycNum(3L)));
    CHECK(c.tag.e == 1);

    for (int trial = 0; trial < 8; ++trial) {
        int dim = 1 + trial % 2;
        DilationMatrix M = validate_dilation(dim == 1 ? IntMatrix{{2}} : IntMatrix{{1, 1}, {1, -1}});
        Poly p(dim);
        for (int k = 0; k < 4; ++k)
            for (const auto& mu : multi_indices(dim, k))
                p += Poly::monomial(dim, mu, CycNum(Rational(static_cast<long>(rng() % 11) - 5, 3)));
        LMatrix w = random_lmatrix(rng, 2, 1, dim, L, -2, 2, 3);
        PolySeq ps{{p}};
        auto jet = poly_transition(ps, w, M, L);
        auto direct = poly_transition_direct(ps, w, M);
        CAPTURE(trial);
        for (int j = 0; j < 2; ++j) {
            CHECK(jet.e[j] == direct.e[j]);
            for (long long k0 = -2; k0 <= 2; ++k0) {
                IntVec k(dim, k0);
                k[0] = -k0;
                CAPTURE(k[0]);
                CHECK(jet.e[j].eval(k) == window_value(p, w(j, 0), M.entries, k));
            }
        }
    }
}

TEST_CASE("identity lowpass bank") {
    // lazy bank: a = delta, b = z, duals halved
    DualFrameletBank bank;
    bank.M = two();
    bank.N = {{1}};
    LPoly z = LPoly::monomial(1, Index::unit(0));
    CycNum half(Rational(1, 2));
    bank.a = LMatrix::identity(1, 1);
    bank.at = bank.a.scaled(half);
    bank.b = LMatrix::scalar(z);
    bank.bt = bank.b.scaled(half);
    bank.theta = bank.thetat = bank.theta_inv = bank.thetat_inv = LMatrix::identity(1, 1);
    REQUIRE(verify_dffb(bank).ok());
    LMatrix v0 = LMatrix::scalar(LPoly::monomial(1, Index::unit(0), CycNum(5L)) + LPoly::delta(1));
    auto c = analyze(v0, bank, 1, Variant::full);
    CHECK(c.v.v == transition({v0, {}}, bank.a, bank.M).v);
    CHECK(reconstruct(c, bank, Variant::full) == v0);
    CHECK(reconstruct(analyze(v0, bank, 0, Variant::full), bank, Variant::full) == v0);
}

TEST_CASE("scalar Haar perfect reconstruction") {
    auto bank = haar_scalar_bank();
    CHECK(verify_dffb(bank).ok());
    LMatrix d = LMatrix::scalar(LPoly::delta(1));
    for (auto variant : {Variant::full, Variant::compact}) {
        auto c = analyze(d, bank, 2, variant);
        CHECK(c.w.size() == 2);
        CHECK(c.v.tag.e == 2);
        CHECK(reconstruct(c, bank, variant) == d);
    }
}

TEST_CASE("constructed bank reconstructs exactly") {
    const auto& bank = hat_trace().bank;
    std::mt19937 rng(21);
    for (int J = 1; J <= 3; ++J) {
        LMatrix v0 = rational_data(rng, 2, 1, 8);
        CAPTURE(J);
        CHECK(reconstruct(analyze(v0, bank, J, Variant::compact), bank, Variant::compact) == v0);
        CHECK(reconstruct(analyze(v0, bank, J, Variant::full), bank, Variant::full) == v0);
    }
}

TEST_CASE("deconvolution needs a strongly invertible Theta") {
    LMatrix th = LMatrix::scalar(hat_mask());
    CHECK_THROWS_AS(deconvolve({LMatrix::identity(1, 1), {}}, th), std::domain_error);
    LMatrix mono = LMatrix::scalar(LPoly::monomial(1, Index::unit(0), CycNum(2L)));
    LMatrix v = LMatrix::scalar(hat_mask());
    CHECK(deconvolve({v * mono, {}}, mono).v == v);
}

TEST_CASE("balanced sparsity on the hat bank") {
    const auto& bank = hat_trace().bank;
    std::mt19937 rng(5);
    auto rep = balanced_sparsity_check(bank, 4, 5, rng);
    CHECK(rep.random_ok);
    CHECK(rep.witness);
    CHECK(rep.order == 2);
    auto c = compact_filters(bank);
    CHECK(rep.order == balancing_order(c.a, c.b, bank.M, bank.N, 4, bank.L));

    // p(k) = k: all w_j vanish; p(k) = k^2 does not
    PolySeq v = poly_vectorize(Poly::coordinate(1, 0), bank.N);
    PolySeq v2 = poly_vectorize(Poly::monomial(1, Index::unit(0) + Index::unit(0)), bank.N);
    bool all_zero = true, some = false;
    for (int j = 0; j < 3; ++j) {
        all_zero = all_zero && poly_transition(v, c.b, bank.M, bank.L).is_zero();
        some = some || !poly_transition(v2, c.b, bank.M, bank.L).is_zero();
        v = poly_transition(v, c.a, bank.M, bank.L);
        v2 = poly_transition(v2, c.a, bank.M, bank.L);
    }
    CHECK(all_zero);
    CHECK(some);

    // b = 0: nothing to vanish
    auto z = balanced_sparsity_check(c.a, LMatrix(0, 2, 1), bank.M, bank.N, 2, 4, 0, rng, bank.L);
    CHECK(z.vanishing_order == 4);
    CHECK_FALSE(z.witness);
}
