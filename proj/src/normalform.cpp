#include "framelet/normalform.hpp"

#include <stdexcept>

#include "framelet/moments.hpp"

namespace framelet {

namespace {

// I + c e_i e_j^T and its inverse, i != j
InvertiblePair elementary(int r, int dim, int i, int j, const LPoly& c) {
    InvertiblePair e = InvertiblePair::identity(r, dim);
    e.U(i, j) = c;
    e.inv(i, j) = -c;
    return e;
}

bool is_unit_row(const JetMatrix& v) {
    return v == JetMatrix::unit_row(v.cols(), 0, v.dim(), v.order());
}

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

}  // namespace

InvertiblePair reduce_row_to_e1(const JetMatrix& v, int n, int L) {
    int r = v.cols(), dim = v.dim();
    if (v.rows() != 1) throw std::invalid_argument("reduce_row_to_e1 needs a row");
    if (r < 2) throw std::invalid_argument("reduce_row_to_e1 needs r >= 2");
    JetMatrix w = v.resized(n);
    InvertiblePair acc = InvertiblePair::identity(r, dim);
    auto apply = [&](const InvertiblePair& e) {
        acc = acc.then(e);
        w = w * jet_of(e.U, n, L);
    };

    int k = 0;
    while (k < r && w(0, k).coeff(0).is_zero()) ++k;
    if (k == r) throw std::domain_error("reduce_row_to_e1: v(0) = 0");
    if (k != 0) {
        std::vector<int> perm(r);
        for (int i = 0; i < r; ++i) perm[i] = i;
        std::swap(perm[0], perm[k]);
        LMatrix p = permutation_matrix(perm, dim);
        apply({p, p.transposed()});
    }

    // kill slots 2..r against slot 1
    Jet inv1 = w(0, 0).inverse();
    InvertiblePair kill = InvertiblePair::identity(r, dim);
    bool any = false;
    for (int l = 1; l < r; ++l) {
        if (w(0, l).is_zero()) continue;
        LPoly g = taylor_match(w(0, l) * inv1, L);
        kill.U(0, l) = -g;
        kill.inv(0, l) = g;
        any = true;
    }
    if (any) apply(kill);

    if (is_unit_row(w)) return acc;
    // w = (w1, O(n), ...): bring w1 to 1 with three moves on slots 1, 2
    apply(elementary(r, dim, 0, 1, taylor_match(w(0, 0).inverse(), L)));
    Jet one = Jet::constant(dim, n, CycNum(1L));
    apply(elementary(r, dim, 1, 0, -taylor_match((w(0, 0) - one) * w(0, 1).inverse(), L)));
    if (!w(0, 1).is_zero()) apply(elementary(r, dim, 0, 1, -taylor_match(w(0, 1) * w(0, 0).inverse(), L)));
    return acc;
}

InvertiblePair link_rows(const JetMatrix& v, const JetMatrix& u, int n, int L) {
    InvertiblePair uv = reduce_row_to_e1(v, n, L), uu = reduce_row_to_e1(u, n, L);
    return uv.then(uu.inverse());
}

InvertiblePair normal_form_general(const JetMatrix& v, const JetMatrix& phi, const JetMatrix& vbar,
                                   const JetMatrix& phibar, int m, int n, int L) {
    int r = v.cols(), dim = v.dim();
    if (r < 2) throw std::invalid_argument("normal form needs r >= 2");
    int nn = std::max(m, n);
    JetMatrix one = JetMatrix::identity(1, dim, m);
    require((v.resized(m) * phi.resized(m)) == one, "normal form: v phi != 1 + O(m)");
    require((vbar.resized(m) * phibar.resized(m)) == one, "normal form: vbar phibar != 1 + O(m)");
    JetMatrix ph = phi.resized(nn), phb = phibar.resized(nn);

    // Step 1: corrected matching rows u_v, u_vbar with u phi = 1 + O(nn)
    auto corrected = [&](const JetMatrix& row, const JetMatrix& col) {
        InvertiblePair u1 = reduce_row_to_e1(col.transposed(), nn, L).transposed();
        JetMatrix w = row.resized(nn) * jet_of(u1.inv, nn, L);
        w(0, 0) = Jet::constant(dim, nn, CycNum(1L));
        return jet_of(taylor_match(w * jet_of(u1.U, nn, L), L), nn, L);
    };
    JetMatrix uv = corrected(v, ph), uvb = corrected(vbar, phb);

    // Step 2
    InvertiblePair u2 = reduce_row_to_e1(uvb, nn, L);
    InvertiblePair u3 = reduce_row_to_e1(uv, nn, L).inverse();
    JetMatrix uphi = jet_of(u3.U, nn, L) * ph;
    JetMatrix uphib = jet_of(u2.inv, nn, L) * phb;

    // Step 3
    InvertiblePair u4 = InvertiblePair::identity(r, dim);
    for (int l = 1; l < r; ++l) {
        LPoly g = taylor_match(uphib(l, 0) - uphi(l, 0), L);
        u4.U(l, 0) = g;
        u4.inv(l, 0) = -g;
    }
    InvertiblePair u = u2.then(u4).then(u3);

    require((v.resized(m) * jet_of(u.inv, m, L)) == vbar.resized(m), "normal form: v U^-1 != vbar + O(m)");
    require((jet_of(u.U, nn, L) * ph) == phb, "normal form: U phi != phibar + O(n)");
    return u;
}

NormalFormResult normal_form_refinable(const LMatrix& a, const DilationMatrix& M, int m, int n, int L) {
    int r = a.rows(), dim = a.dim();
    if (r < 2) throw std::invalid_argument("normal form needs r >= 2");
    int nn = std::max(m, n);
    auto [sr, v] = sum_rule_order(a, M, m, L);
    if (sr < m) throw std::domain_error("normal form: mask has fewer sum rules than requested");
    RefinableJet phi = phi_jet_from_mask(a, M, nn, L);
    NormalFormResult res;
    res.m = m;
    res.n = n;
    res.U = normal_form_general(v.jet, phi.jet, JetMatrix::unit_row(r, 0, dim, m), JetMatrix::unit_col(r, 0, dim, nn),
                                m, n, L);
    res.mask = res.U.U.dilate(M.entries) * a * res.U.inv;
    res.phi_jet = jet_of(res.U.U, nn, L) * phi.jet;
    res.matching_jet = v.jet * jet_of(res.U.inv, m, L);
    res.verified = verify_ideal_normal_form(res.mask, M, m, n, L);
    return res;
}

bool verify_ideal_normal_form(const LMatrix& a, const DilationMatrix& M, int m, int n, int L) {
    int r = a.rows(), dim = a.dim();
    if (r < 2 || a.cols() != r) return false;
    auto om = omega_cosets(M);
    LMatrix a11 = a.block(0, 0, 1, 1), a12 = a.block(0, 1, 1, r - 1), a21 = a.block(1, 0, r - 1, 1);
    LMatrix e = LMatrix::identity(1, dim);
    if (vanish_order(a11 - e, om[0], n, L) < n) return false;
    if (vanish_order(a21, om[0], n, L) < n) return false;
    for (size_t j = 0; j < om.size(); ++j) {
        if (j > 0 && vanish_order(a11, om[j], m, L) < m) return false;
        if (vanish_order(a12, om[j], m, L) < m) return false;
    }
    return true;
}

}  // namespace framelet
