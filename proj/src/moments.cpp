#include "framelet/moments.hpp"

#include <stdexcept>

namespace framelet {

namespace {

RatMatrix inverse_transpose(const DilationMatrix& M) { return rat_transpose(rat_inverse(M.entries)); }

JetMatrix mask_jet(const LMatrix& a, const RatVec& omega, int order, int L) {
    return jet_of(a.shift(omega, L), order, L);
}

// first nonzero entry scaled to 1
std::vector<CycNum> unit_eigenvector(const CycMatrix& a) {
    CycMatrix s = a - CycMatrix::identity(a.rows());
    auto ns = nullspace(s);
    if (ns.size() != 1) throw std::domain_error("eigenvalue 1 of a(0) is not simple");
    auto v = ns[0];
    size_t k = 0;
    while (v[k].is_zero()) ++k;
    CycNum inv = v[k].inverse();
    for (auto& x : v) x *= inv;
    return v;
}

// Scalar jet s with lhs(s) = rhs(s) + O(m), s(0) = 1, for the largest m <= cap.
// Both sides are linear in s. Returns the order reached.
int scalar_multiplier_order(int dim, int cap,
                            const std::function<JetMatrix(const JetMatrix&, int)>& residual) {
    int reached = 0;
    for (int m = 1; m <= cap; ++m) {
        auto f = [&](const JetMatrix& s) {
            Flat out;
            append_flat(out, residual(s, m));
            out.push_back(s(0, 0).coeff(0));
            return out;
        };
        Flat target = f(JetMatrix(1, 1, dim, m));
        for (auto& x : target) x = CycNum();
        target.back() = CycNum(1L);
        if (!solve_jet_affine(1, 1, dim, m, f, target)) break;
        reached = m;
    }
    return reached;
}

}  // namespace

void append_flat(Flat& out, const JetMatrix& j) {
    for (int r = 0; r < j.rows(); ++r)
        for (int c = 0; c < j.cols(); ++c) {
            const Jet& e = j(r, c);
            for (int p = 0; p < e.table().size(); ++p) out.push_back(e.coeff(p));
        }
}

std::optional<JetMatrix> solve_jet_affine(int rows, int cols, int dim, int order,
                                          const std::function<Flat(const JetMatrix&)>& f, const Flat& target) {
    JetMatrix x(rows, cols, dim, order);
    int per = mono_table(dim, order).size();
    int n = rows * cols * per;
    Flat base = f(x);
    if (base.size() != target.size()) throw std::invalid_argument("solve_jet_affine: target length mismatch");
    CycMatrix a(static_cast<int>(base.size()), n);
    for (int u = 0; u < n; ++u) {
        JetMatrix e(rows, cols, dim, order);
        e(u / per / cols, (u / per) % cols).coeff(u % per) = CycNum(1L);
        Flat col = f(e);
        for (size_t i = 0; i < col.size(); ++i) a(static_cast<int>(i), u) = col[i] - base[i];
    }
    Flat rhs(base.size());
    for (size_t i = 0; i < base.size(); ++i) rhs[i] = target[i] - base[i];
    auto sol = solve(std::move(a), rhs);
    if (!sol) return std::nullopt;
    for (int u = 0; u < n; ++u) x(u / per / cols, (u / per) % cols).coeff(u % per) = (*sol)[u];
    return x;
}

RatMatrix rat_matrix(const IntMatrix& m) {
    RatMatrix r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (long long v : m[i]) r[i].emplace_back(static_cast<long>(v));
    return r;
}

RatMatrix rat_transpose(const RatMatrix& m) {
    RatMatrix t(m.empty() ? 0 : m[0].size(), RatVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

CycMatrix value_at_zero(const LMatrix& a) {
    CycMatrix m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (const auto& [k, v] : a(i, j).terms()) m(i, j) += v;
    return m;
}

CycMatrix degree_composition(const DilationMatrix& M, int j) {
    int d = M.dim;
    const auto& t = mono_table(d, j + 1);
    int lo = t.degree_start[j], hi = t.degree_start[j + 1];
    RatMatrix mt = rat_matrix(M.transposed());
    CycMatrix k(hi - lo, hi - lo);
    for (int q = lo; q < hi; ++q) {
        Jet e(d, j + 1);
        e.coeff(q) = CycNum(1L);
        Jet c = e.compose(mt);
        for (int p = lo; p < hi; ++p) k(p - lo, q - lo) = c.coeff(p);
    }
    return k;
}

bool simple_unit_eigenvalue(const CycMatrix& a) {
    int r = a.rows();
    CycMatrix s = a - CycMatrix::identity(r);
    return rank(s) == r - 1 && rank(s * s) == r - 1;
}

RefinableJet phi_jet_from_mask(const LMatrix& a, const DilationMatrix& M, int order, int L) {
    int r = a.rows(), d = a.dim();
    CycMatrix a0 = value_at_zero(a);
    if (!simple_unit_eigenvalue(a0)) throw std::domain_error("eigenvalue 1 of a(0) is not simple");
    JetMatrix phi(r, 1, d, order);
    auto v0 = unit_eigenvector(a0);
    for (int i = 0; i < r; ++i) phi(i, 0).coeff(0) = v0[i];
    if (order <= 1) return {phi};

    JetMatrix aj = jet_of(a, order, L);
    RatMatrix mt = rat_matrix(M.transposed());
    const auto& t = mono_table(d, order);
    for (int j = 1; j < order; ++j) {
        int lo = t.degree_start[j], hi = t.degree_start[j + 1], w = hi - lo;
        // degree j of phi(M^T .) - a phi with the degree j block still zero
        JetMatrix res = phi.compose(mt) - aj * phi;
        CycMatrix k = kron(degree_composition(M, j), CycMatrix::identity(r)) -
                      kron(CycMatrix::identity(w), a0);
        Flat rhs(static_cast<size_t>(w) * r);
        for (int p = 0; p < w; ++p)
            for (int i = 0; i < r; ++i) rhs[p * r + i] = -res(i, 0).coeff(lo + p);
        if (rank(k) < w * r) throw std::domain_error("refinement jet system singular at degree " + std::to_string(j));
        auto sol = solve(std::move(k), rhs);
        for (int p = 0; p < w; ++p)
            for (int i = 0; i < r; ++i) phi(i, 0).coeff(lo + p) = (*sol)[p * r + i];
    }
    return {phi};
}

std::pair<int, MatchingJet> sum_rule_order(const LMatrix& a, const DilationMatrix& M, int cap, int L) {
    int r = a.rows(), d = a.dim();
    CycMatrix a0 = value_at_zero(a);
    std::vector<CycNum> phi0;
    try {
        phi0 = unit_eigenvector(a0);
    } catch (const std::domain_error&) {
        // fall back to any 1-eigenvector; the pairing decides below
        auto ns = nullspace(a0 - CycMatrix::identity(r));
        if (ns.empty()) throw std::domain_error("sum rules: 1 is not an eigenvalue of a(0)");
        phi0 = ns[0];
    }
    auto om = omega_cosets(M);
    std::vector<JetMatrix> aw;
    for (const auto& w : om) aw.push_back(mask_jet(a, w, cap, L));
    RatMatrix mt = rat_matrix(M.transposed());

    int best = 0;
    MatchingJet found;
    for (int m = 1; m <= cap; ++m) {
        auto f = [&](const JetMatrix& v) {
            Flat out;
            JetMatrix vm = v.compose(mt);
            for (size_t j = 0; j < om.size(); ++j) {
                JetMatrix e = vm * aw[j].truncated(m);
                if (j == 0) e -= v;
                append_flat(out, e);
            }
            CycNum pair;
            for (int i = 0; i < r; ++i) pair += v(0, i).coeff(0) * phi0[i];
            out.push_back(pair);
            return out;
        };
        Flat target = f(JetMatrix(1, r, d, m));
        for (auto& x : target) x = CycNum();
        target.back() = CycNum(1L);
        auto v = solve_jet_affine(1, r, d, m, f, target);
        if (!v) break;
        best = m;
        found.jet = std::move(*v);
    }
    if (best == 0) throw std::domain_error("sum rules: no matching filter at order 0");
    return {best, found};
}

bool verify_matching_consistency(const MatchingJet& v, const RefinableJet& phi, int m) {
    JetMatrix p = v.jet.truncated(m) * phi.jet.truncated(m);
    JetMatrix one = JetMatrix::identity(1, p.dim(), m);
    return p == one;
}

int generator_vmo(const LMatrix& b, const RefinableJet& phi, const DilationMatrix& M, int cap, int L) {
    int order = std::min(cap, phi.jet.order());
    if (b.is_zero()) return cap;
    JetMatrix psi = (jet_of(b, order, L) * phi.jet.truncated(order)).compose(inverse_transpose(M));
    int v = psi.vanish_order();
    return v >= order ? cap : v;
}

JetMatrix balancing_vector_jet(const IntMatrix& N, int dim, int order, int L) {
    auto gam = gamma_cosets(N);
    RatMatrix inv = rat_inverse(N);
    int r = static_cast<int>(gam.size());
    const auto& t = mono_table(dim, order);
    CycNum iu = CycNum::imag_unit(L);
    std::vector<CycNum> ipow(order + 1, CycNum(1L));
    for (int k = 1; k <= order; ++k) ipow[k] = ipow[k - 1] * iu;
    JetMatrix out(1, r, dim, order);
    for (int k = 0; k < r; ++k) {
        RatVec c = rat_apply(inv, gam[k]);
        for (int p = 0; p < t.size(); ++p) {
            const Index& mu = t.mono[p];
            Rational q = 1;
            for (int l = 0; l < dim; ++l)
                for (int e = 0; e < mu[l]; ++e) q *= c[l];
            q /= factorial(mu, dim);
            if (q != 0) out(0, k).coeff(p) = ipow[mu.total()].scaled(q);
        }
    }
    return out;
}

int balancing_vmo(const LMatrix& b, const IntMatrix& N, int cap, int L) {
    long long det = Rational(abs(int_det(N))).get_num().get_si();
    if (det != b.cols()) throw std::invalid_argument("balancing: |det N| must equal r");
    if (b.is_zero()) return cap;
    JetMatrix p = balancing_vector_jet(N, b.dim(), cap, L) * jet_of(b, cap, L).conj_transpose();
    int v = p.vanish_order();
    return v >= cap ? cap : v;
}

int balancing_lowpass_order(const LMatrix& a, const DilationMatrix& M, const IntMatrix& N, int cap, int L) {
    long long det = Rational(abs(int_det(N))).get_num().get_si();
    if (det != a.cols()) throw std::invalid_argument("balancing: |det N| must equal r");
    int d = a.dim();
    JetMatrix vn = balancing_vector_jet(N, d, cap, L);
    JetMatrix lhs = vn * jet_of(a, cap, L).conj_transpose();
    JetMatrix vnm = vn.compose(rat_matrix(M.transposed()));
    return scalar_multiplier_order(d, cap, [&](const JetMatrix& c, int m) {
        return lhs.truncated(m) - vnm.truncated(m).scaled(c(0, 0));
    });
}

int balancing_order(const LMatrix& a, const LMatrix& b, const DilationMatrix& M, const IntMatrix& N, int cap, int L) {
    return std::min(balancing_vmo(b, N, cap, L), balancing_lowpass_order(a, M, N, cap, L));
}

namespace {

ConditionResult rank_condition(const std::string& name, const CycMatrix& a0, const DilationMatrix& M, int upto,
                               bool left_scaled) {
    // left_scaled: I - K_j (x) a0, otherwise K_j (x) I - I (x) a0
    ConditionResult c{name, true, upto, -1, {}};
    int r = a0.rows();
    for (int j = 1; j < upto; ++j) {
        CycMatrix k = degree_composition(M, j);
        int w = k.rows();
        CycMatrix mat = left_scaled ? CycMatrix::identity(w * r) - kron(k, a0)
                                    : kron(k, CycMatrix::identity(r)) - kron(CycMatrix::identity(w), a0);
        if (rank(mat) < w * r) {
            c.ok = false;
            c.order_found = j;
            c.obstruction_order = j;
            return c;
        }
    }
    return c;
}

// rows of u agree with s times the first column entry profile of w: u = s w + O(m), s(0) != 0
ConditionResult proportional(const std::string& name, const JetMatrix& u, const JetMatrix& w, int m) {
    ConditionResult c{name, false, 0, -1, {}};
    // w(0,0) is e^{0} = 1 here, so s = u(0,0) / w(0,0) is forced
    Jet s = u(0, 0).truncated(m) * w(0, 0).truncated(m).inverse();
    JetMatrix diff = u.truncated(m) - w.truncated(m).scaled(s);
    int v = diff.vanish_order();
    c.ok = !s.coeff(0).is_zero() && v >= m;
    c.order_found = std::min(v, m);
    if (!c.ok) c.obstruction_order = c.order_found;
    return c;
}

}  // namespace

Theta1Report check_theta1_conditions(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const LMatrix& thetat,
                                     const DilationMatrix& M, const IntMatrix& N, int m, int mt, int L) {
    Theta1Report rep;
    int d = a.dim(), n = m + mt;
    RatMatrix mtr = rat_matrix(M.transposed());

    // (iii)
    CycMatrix a0 = value_at_zero(a), at0 = value_at_zero(at);
    bool simple = simple_unit_eigenvalue(a0) && simple_unit_eigenvalue(at0);
    rep.details.push_back({"(iii) simple eigenvalue 1", simple, simple ? 1 : 0, simple ? -1 : 0, {}});
    auto c1 = rank_condition("(iii) lambda^alpha I - a(0)", a0, M, mt, false);
    auto c2 = rank_condition("(iii) I - lambda^beta a(0)", a0, M, m, true);
    auto c3 = rank_condition("(iii) I - lambda^alpha at(0)", at0, M, mt, true);
    auto c4 = rank_condition("(iii) lambda^beta I - at(0)", at0, M, m, false);
    rep.item_iii = simple && c1.ok && c2.ok && c3.ok && c4.ok;
    for (auto* c : {&c1, &c2, &c3, &c4}) rep.details.push_back(*c);

    LMatrix thi = strong_inverse(theta), thti = strong_inverse(thetat);
    LMatrix mta = thetat.dilate(M.entries) * at * thti;
    JetMatrix vn = balancing_vector_jet(N, d, std::max(n, 1), L);

    // (i)
    try {
        auto [sa, v] = sum_rule_order(a, M, mt, L);
        auto [sat, vt] = sum_rule_order(at, M, m, L);
        if (sa < mt || sat < m) throw std::domain_error("sum rule orders below the stated ones");
        JetMatrix phi = phi_jet_from_mask(a, M, n, L).jet, phit = phi_jet_from_mask(at, M, n, L).jet;
        JetMatrix vr = v.jet.truncated(mt) * jet_of(thi, mt, L);
        JetMatrix vtr = vt.jet.truncated(m) * jet_of(thti, m, L);
        JetMatrix phr = jet_of(theta, n, L) * phi, phtr = jet_of(thetat, n, L) * phit;
        auto e1 = proportional("(i) v theta^-1 ~ c V_N", vr, vn, mt);
        auto e2 = proportional("(i) v theta^-1 ~ C conj(phit-ring)^T", vr, phtr.conj_transpose(), mt);
        auto e3 = proportional("(i) vt thetat^-1 ~ d V_N", vtr, vn, m);
        auto e4 = proportional("(i) vt thetat^-1 ~ Ct conj(phi-ring)^T", vtr, phr.conj_transpose(), m);
        // phi, phit carry an arbitrary scale, so the pairing is 1 up to a constant
        JetMatrix pp = phr.conj_transpose() * phtr;
        auto e5 = proportional("(i) conj(phi-ring)^T phit-ring = const", pp, JetMatrix::identity(1, d, n), n);
        rep.item_i = e1.ok && e2.ok && e3.ok && e4.ok && e5.ok;
        for (auto* c : {&e1, &e2, &e3, &e4, &e5}) rep.details.push_back(*c);
    } catch (const std::exception& ex) {
        rep.details.push_back({"(i) moment conditions", false, 0, 0, ex.what()});
    }

    // (iv) p(M^T.) V_N(M^T.) mta = p V_N + O(m)
    {
        JetMatrix vm = vn.compose(mtr);
        JetMatrix ja = jet_of(mta, std::max(m, 1), L);
        int got = scalar_multiplier_order(d, m, [&](const JetMatrix& p, int k) {
            JetMatrix pm = p.compose(mtr);
            return (vm.truncated(k).scaled(pm(0, 0)) * ja.truncated(k)) - vn.truncated(k).scaled(p(0, 0));
        });
        rep.item_iv = got >= m;
        rep.details.push_back({"(iv) p V_N invariant under mta", rep.item_iv, got, rep.item_iv ? -1 : got, {}});
    }
    // (v) q mta conj(V_N)^T = q(M^T.) conj(V_N(M^T.))^T + O(mt)
    {
        JetMatrix vc = vn.conj_transpose(), vcm = vn.compose(mtr).conj_transpose();
        JetMatrix ja = jet_of(mta, std::max(mt, 1), L);
        int got = scalar_multiplier_order(d, mt, [&](const JetMatrix& q, int k) {
            JetMatrix qm = q.compose(mtr);
            return (ja.truncated(k) * vc.truncated(k)).scaled(q(0, 0)) - vcm.truncated(k).scaled(qm(0, 0));
        });
        rep.item_v = got >= mt;
        rep.details.push_back({"(v) mta conj(V_N)^T eigen-relation", rep.item_v, got, rep.item_v ? -1 : got, {}});
    }
    return rep;
}

Theta1Report check_theta1_conditions(const DualFrameletBank& bank) {
    return check_theta1_conditions(bank.a, bank.at, bank.theta, bank.thetat, bank.M, bank.N, bank.m, bank.mt, bank.L);
}

}  // namespace framelet
