#include <doctest.h>

#include "framelet/filterbank.hpp"
#include "framelet/moments.hpp"
#include "framelet/normalform.hpp"
#include "helpers.hpp"

using namespace framelet;
using namespace testutil;

namespace {

const DilationMatrix& two() {
    static DilationMatrix m = validate_dilation({{2}});
    return m;
}

JetMatrix random_row(std::mt19937& rng, int r, int dim, int order, int L) {
    JetMatrix v(1, r, dim, order);
    for (int i = 0; i < r; ++i) v(0, i) = random_jet(rng, dim, order, L);
    return v;
}

bool exact_inverse(const InvertiblePair& p) {
    int r = p.U.rows(), d = p.U.dim();
    return p.U * p.inv == LMatrix::identity(r, d) && p.inv * p.U == LMatrix::identity(r, d);
}

// random (v, phi) with v phi = 1 + O(order)
std::pair<JetMatrix, JetMatrix> random_pair(std::mt19937& rng, int r, int dim, int order, int L) {
    while (true) {
        JetMatrix v = random_row(rng, r, dim, order, L);
        JetMatrix phi = random_row(rng, r, dim, order, L).transposed();
        JetMatrix p = v * phi;
        if (p(0, 0).coeff(0).is_zero()) continue;
        return {v.scaled(p(0, 0).inverse()), phi};
    }
}

}  // namespace

TEST_CASE("row reduction to e1") {
    const int L = 4;
    auto id = reduce_row_to_e1(JetMatrix::unit_row(3, 0, 1, 3), 3, L);
    CHECK(id.U == LMatrix::identity(3, 1));
    auto sw = reduce_row_to_e1(JetMatrix::unit_row(2, 1, 1, 3), 3, L);
    CHECK(sw.U == permutation_matrix({1, 0}, 1));
    CHECK_THROWS_AS(reduce_row_to_e1(JetMatrix(1, 2, 1, 3), 3, L), std::domain_error);

    std::mt19937 rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        int r = 2 + trial % 3, dim = 1 + trial % 2, n = 4;
        JetMatrix v = random_row(rng, r, dim, n, L);
        if (trial % 4 == 0) v(0, 0) = Jet(dim, n);   // goes through the permutation
        if (v.value_at_zero().vanish_order() >= 1) continue;
        auto u = reduce_row_to_e1(v, n, L);
        CAPTURE(trial);
        CHECK(exact_inverse(u));
        CHECK(is_strongly_invertible(u.U));
        CHECK(v * jet_of(u.U, n, L) == JetMatrix::unit_row(r, 0, dim, n));
    }
}

TEST_CASE("link_rows maps one row to another") {
    const int L = 4;
    std::mt19937 rng(3);
    JetMatrix v = random_row(rng, 2, 1, 3, L);
    v(0, 0).coeff(0) = CycNum(1L);
    auto same = link_rows(v, v, 3, L);
    CHECK(v * jet_of(same.U, 3, L) == v);

    JetMatrix ones(1, 2, 1, 3);
    ones(0, 0) = Jet::constant(1, 3, CycNum(1L));
    ones(0, 1) = Jet::constant(1, 3, CycNum(1L));
    auto u = link_rows(ones, JetMatrix::unit_row(2, 0, 1, 3), 3, L);
    CHECK(ones * jet_of(u.U, 3, L) == JetMatrix::unit_row(2, 0, 1, 3));

    for (IntMatrix N : {IntMatrix{{2}}, IntMatrix{{1, 1}, {1, -1}}}) {
        int dim = static_cast<int>(N.size());
        JetMatrix vn = balancing_vector_jet(N, dim, 4, L);
        JetMatrix w = random_row(rng, 2, dim, 4, L);
        w(0, 1).coeff(0) = CycNum(2L);
        auto p = link_rows(w, vn, 4, L);
        CHECK(exact_inverse(p));
        CHECK(w * jet_of(p.U, 4, L) == vn);
    }
}

TEST_CASE("general normal form on random admissible quadruples") {
    const int L = 4;
    std::mt19937 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        int r = 2 + trial % 2, dim = 1 + (trial / 5), m = 2, n = 4;
        auto [v, phi] = random_pair(rng, r, dim, n, L);
        auto [vb, phib] = random_pair(rng, r, dim, n, L);
        auto u = normal_form_general(v, phi, vb, phib, m, n, L);
        CAPTURE(trial);
        CHECK(exact_inverse(u));
        CHECK(v.truncated(m) * jet_of(u.inv, m, L) == vb.truncated(m));
        CHECK(jet_of(u.U, n, L) * phi == phib);
    }
    // canonical pair
    JetMatrix e = JetMatrix::unit_row(2, 0, 1, 2);
    auto c = normal_form_general(e, e.transposed(), e, e.transposed(), 2, 2, L);
    CHECK(e * jet_of(c.inv, 2, L) == e);

    // vectorized Haar pair to the canonical pair
    LMatrix vh = vectorize_scalar_mask(haar_mask(), two(), {{2}});
    auto [sr, mv] = sum_rule_order(vh, two(), 2, L);
    REQUIRE(sr >= 1);
    auto phi = phi_jet_from_mask(vh, two(), 2, L);
    auto h = normal_form_general(mv.jet.resized(2), phi.jet, e, e.transposed(), 1, 2, L);
    CHECK(jet_of(h.U, 2, L) * phi.jet == e.transposed());

    JetMatrix bad = e;
    bad(0, 0).coeff(0) = CycNum(2L);
    CHECK_THROWS_AS(normal_form_general(bad, e.transposed(), e, e.transposed(), 2, 2, L), std::domain_error);
}

TEST_CASE("refinable normal form reaches the ideal block structure") {
    const int L = 4;
    LMatrix vhat = vectorize_scalar_mask(hat_mask(), two(), {{2}});
    CHECK_FALSE(verify_ideal_normal_form(vhat, two(), 2, 4, L));
    CHECK_FALSE(verify_ideal_normal_form(LMatrix::scalar(hat_mask()), two(), 2, 4, L));

    auto res = normal_form_refinable(vhat, two(), 2, 4, L);
    CHECK(res.verified);
    CHECK(exact_inverse(res.U));
    CHECK(sum_rule_order(res.mask, two(), 4, L).first == 2);
    CHECK(res.phi_jet == JetMatrix::unit_col(2, 0, 1, 4));

    DilationMatrix m2 = validate_dilation({{2, 0}, {0, 2}});
    LMatrix v2 = vectorize_scalar_mask(tensor_product(hat_mask(), hat_mask()), m2, {{1, 1}, {1, -1}});
    auto res2 = normal_form_refinable(v2, m2, 2, 4, 8);
    CHECK(res2.verified);
    CHECK(exact_inverse(res2.U));
}

TEST_CASE("normal form on randomized masks keeps sum rules") {
    const int L = 4;
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        int r = trial % 2 ? 3 : 2;
        LMatrix base = vectorize_scalar_mask(hat_mask(), two(), {{r}});
        LMatrix a = conjugate_mask(base, random_strongly_invertible(rng, r, 1, L), two().entries);
        int m = sum_rule_order(a, two(), 4, L).first;
        auto res = normal_form_refinable(a, two(), m, m + 1, L);
        CAPTURE(trial);
        CHECK(res.verified);
        CHECK(exact_inverse(res.U));
        CHECK(sum_rule_order(res.mask, two(), 4, L).first == m);
    }
}
