#include "framelet/construct.hpp"

#include <cstdlib>
#include <numeric>

#include "framelet/division.hpp"
#include "framelet/moments.hpp"

namespace framelet {

namespace {

constexpr int kSumRuleCap = 8;

void expect(bool ok, const char* stage, const std::string& what) {
    if (!ok) throw VerificationError(stage, what);
}

CycNum inv_int(long long k) { return CycNum(Rational(1, static_cast<long>(k))); }

int checked_sum_rules(const LMatrix& a, const DilationMatrix& M, int L, const char* stage, const char* name,
                      MatchingJet* v) {
    try {
        auto [sr, mv] = sum_rule_order(a, M, kSumRuleCap, L);
        if (v) *v = mv;
        return sr;
    } catch (const std::domain_error& e) {
        throw HypothesisError(stage, std::string(name) + ": " + e.what());
    }
}

RefinableJet checked_phi(const LMatrix& a, const DilationMatrix& M, int order, int L, const char* stage,
                         const char* name) {
    try {
        return phi_jet_from_mask(a, M, order, L);
    } catch (const std::domain_error& e) {
        throw HypothesisError(stage, std::string(name) + ": " + e.what());
    }
}

// Block vanishing conditions on A_j; r = 1 has only the (1,1) entry.
void check_Aj_blocks(const std::vector<LMatrix>& A, const std::vector<RatVec>& om, int m, int mt, int L) {
    int r = A[0].rows(), n = m + mt;
    for (size_t j = 0; j < A.size(); ++j) {
        RatVec neg = om[j];
        for (auto& x : neg) x = -x;
        std::string tag = " at j = " + std::to_string(j + 1);
        LMatrix a11 = A[j].block(0, 0, 1, 1);
        if (j == 0) expect(vanish_order(a11, om[0], n, L) >= n, "build_Aj", "A_{1;1} != O(n)");
        else expect(vanish_order(a11, om[0], m, L) >= m, "build_Aj", "A_{j;1} != O(m)" + tag);
        expect(vanish_order(a11, neg, mt, L) >= mt, "build_Aj", "A_{j;1}(. - 2 pi omega_j) != O(mt)" + tag);
        if (r == 1) continue;
        expect(vanish_order(A[j].block(0, 1, 1, r - 1), om[0], m, L) >= m, "build_Aj", "A_{j;2} != O(m)" + tag);
        expect(vanish_order(A[j].block(1, 0, r - 1, 1), neg, mt, L) >= mt, "build_Aj",
               "A_{j;3}(. - 2 pi omega_j) != O(mt)" + tag);
    }
}

std::vector<LMatrix> assemble_Aj(const LMatrix& a, const LMatrix& at, const LMatrix& Theta,
                                 const DilationMatrix& M, int L) {
    auto om = omega_cosets(M);
    LMatrix as = a.adjoint() * Theta.dilate(M.entries);
    std::vector<LMatrix> A;
    for (size_t j = 0; j < om.size(); ++j) {
        LMatrix aj = -(as * at.shift(om[j], L));
        if (j == 0) aj += Theta;
        A.push_back(std::move(aj));
    }
    return A;
}

std::vector<CellTable> decompose_all(const std::vector<LMatrix>& A, const DilationMatrix& M, int m, int mt,
                                     int L) {
    auto om = omega_cosets(M);
    std::vector<CellTable> out;
    for (size_t j = 0; j < A.size(); ++j) out.push_back(decompose_Aj(A[j], m, mt, om[j], L));
    return out;
}

void record(ConstructionTrace& t, const std::string& name, bool ok, const char* stage) {
    t.checks.emplace_back(name, ok);
    expect(ok, stage, name);
}

}  // namespace

int construction_field_order(const LMatrix& a, const LMatrix& at, const DilationMatrix& M) {
    int L = default_field_order(M);
    for (int f : {a.field_order(), at.field_order()})
        if (f) L = std::lcm(L, f);
    return L;
}

LMatrix delta_filter(int r, int dim, const Index& mu) {
    LMatrix d = LMatrix::identity(r, dim);
    d(0, 0) = LPoly::nabla(dim, mu);
    return d;
}

ThetaPair build_theta_pair(const LMatrix& a, const LMatrix& at, const DilationMatrix& M, const IntMatrix& N, int L) {
    const char* stage = "build_theta_pair";
    int r = a.rows(), d = a.dim();
    if (r < 2) throw HypothesisError(stage, "r >= 2 required");
    if (a.cols() != r || at.rows() != r || at.cols() != r) throw HypothesisError(stage, "masks must be r x r");
    if (static_cast<int>(N.size()) != d || abs(int_det(N)) != Rational(r))
        throw HypothesisError(stage, "|det N| must equal r");

    ThetaPair tp;
    MatchingJet v, vt;
    tp.mt = checked_sum_rules(a, M, L, stage, "mask", &v);
    tp.m = checked_sum_rules(at, M, L, stage, "dual mask", &vt);
    int n = tp.m + tp.mt;
    tp.v = v.jet;
    tp.vt = vt.jet;
    tp.phi = checked_phi(a, M, n, L, stage, "mask").jet;
    tp.phit = checked_phi(at, M, n, L, stage, "dual mask").jet;

    JetMatrix V = balancing_vector_jet(N, d, n, L);
    JetMatrix Vs = V.conj_transpose();
    CycNum rinv = inv_int(r);
    tp.target_v = V.truncated(tp.mt);
    tp.target_phi = Vs.scaled(rinv);
    tp.target_vt = V.truncated(tp.m).scaled(rinv);
    tp.target_phit = Vs;

    JetMatrix e1 = JetMatrix::unit_row(r, 0, d, n), e1t = JetMatrix::unit_col(r, 0, d, n);
    try {
        tp.W = normal_form_general(tp.v, tp.phi, e1, e1t, tp.mt, n, L);
        tp.Wt = normal_form_general(tp.vt, tp.phit, e1, e1t, tp.m, n, L);
        tp.UV = normal_form_general(V, Vs.scaled(rinv), e1, e1t, n, n, L);
    } catch (const std::domain_error& e) {
        throw HypothesisError(stage, e.what());
    }
    tp.theta = tp.UV.inverse().then(tp.W);
    tp.thetat = InvertiblePair{tp.UV.U.adjoint(), tp.UV.inv.adjoint()}.then(tp.Wt);

    LMatrix id = LMatrix::identity(r, d);
    expect(tp.theta.U * tp.theta.inv == id, stage, "theta theta^{-1} != I");
    expect(tp.thetat.U * tp.thetat.inv == id, stage, "thetat thetat^{-1} != I");
    expect(tp.v.resized(tp.mt) * jet_of(tp.theta.inv, tp.mt, L) == tp.target_v, stage,
           "v theta^{-1} != V_N + O(mt)");
    expect(jet_of(tp.theta.U, n, L) * tp.phi == tp.target_phi, stage, "theta phi != conj(V_N)^T / r + O(n)");
    expect(tp.vt.resized(tp.m) * jet_of(tp.thetat.inv, tp.m, L) == tp.target_vt, stage,
           "vt thetat^{-1} != V_N / r + O(m)");
    expect(jet_of(tp.thetat.U, n, L) * tp.phit == tp.target_phit, stage, "thetat phit != conj(V_N)^T + O(n)");
    return tp;
}

std::vector<LMatrix> build_Aj(const LMatrix& a, const LMatrix& at, const DilationMatrix& M, int m, int mt, int L) {
    int n = m + mt;
    expect(verify_ideal_normal_form(a, M, mt, n, L), "build_Aj", "mask not in ideal (mt, n) normal form");
    expect(verify_ideal_normal_form(at, M, m, n, L), "build_Aj", "dual mask not in ideal (m, n) normal form");
    auto A = assemble_Aj(a, at, LMatrix::identity(a.rows(), a.dim()), M, L);
    check_Aj_blocks(A, omega_cosets(M), m, mt, L);
    return A;
}

CellTable decompose_Aj(const LMatrix& A, int m, int mt, const RatVec& omega, int L) {
    int r = A.rows(), d = A.dim();
    const Index a0 = multi_indices(d, m).front(), b0 = multi_indices(d, mt).front();
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
            if (!A(i, k).is_zero()) slots.emplace_back(i, k);

    // one list of (cell, quotient) per nonzero entry
    std::vector<std::vector<std::pair<CellKey, LPoly>>> parts(slots.size());
    std::vector<std::string> errors(slots.size());
#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < static_cast<int>(slots.size()); ++s) {
        auto [i, k] = slots[s];
        const LPoly& c = A(i, k);
        try {
            if (i == 0 && k == 0) {
                for (auto& [key, q] : divide_two_point(c, m, mt, omega, L)) parts[s].emplace_back(key, q);
            } else if (i == 0) {
                for (auto& [al, q] : divide_at_origin(c, m, Flavor::conj)) parts[s].emplace_back(CellKey{al, b0}, q);
            } else if (k == 0) {
                for (auto& [be, q] : divide_at_point(c, mt, omega, L)) parts[s].emplace_back(CellKey{a0, be}, q);
            } else {
                parts[s].emplace_back(CellKey{a0, b0}, c);
            }
        } catch (const std::exception& e) {
            errors[s] = e.what();
        }
    }
    CellTable t;
    for (size_t s = 0; s < slots.size(); ++s) {
        expect(errors[s].empty(), "decompose_Aj",
               "entry (" + std::to_string(slots[s].first + 1) + "," + std::to_string(slots[s].second + 1) +
                   "): " + errors[s]);
        for (auto& [key, q] : parts[s]) {
            if (q.is_zero()) continue;
            auto it = t.try_emplace(key, r, r, d).first;
            it->second(slots[s].first, slots[s].second) += q;
        }
    }
    expect(recompose_Aj(t, r, d, omega, L) == A, "decompose_Aj", "recomposition differs from A_j");
    return t;
}

LMatrix recompose_Aj(const CellTable& t, int r, int dim, const RatVec& omega, int L) {
    LMatrix sum(r, r, dim);
    for (const auto& [key, cell] : t)
        sum += delta_filter(r, dim, key.first).adjoint() * cell * delta_filter(r, dim, key.second).shift(omega, L);
    return sum;
}

Generators assemble_generators(const std::vector<CellTable>& tables, const DilationMatrix& M, int r, int L) {
    auto om = omega_cosets(M);
    int d = M.dim, dm = static_cast<int>(M.abs_det);
    Generators g;
    for (const auto& t : tables)
        for (const auto& kv : t) g.E.try_emplace(kv.first, r * dm, r * dm, d);
    for (const auto& kv : g.E) g.cells.push_back(kv.first);

    int nc = static_cast<int>(g.cells.size());
    std::vector<LMatrix> E(nc), top(nc), bottom(nc);
    LMatrix F = F_matrix(r, M, L);
    CycNum dinv = inv_int(dm);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nc; ++c) {
        const CellKey& key = g.cells[c];
        LMatrix e(r * dm, r * dm, d);
        for (size_t j = 0; j < tables.size(); ++j) {
            auto it = tables[j].find(key);
            if (it != tables[j].end()) e += E_matrix(it->second, om[j], M, L);
        }
        E[c] = e.scaled(dinv);
        LMatrix sa(r * dm, r, d), sb(r * dm, r, d);
        sa.set_block(0, 0, delta_filter(r, d, key.first));
        sb.set_block(0, 0, delta_filter(r, d, key.second));
        top[c] = F * sa;   // E_1 = I
        bottom[c] = E[c].dilate(M.entries) * (F * sb);
    }
    for (int c = 0; c < nc; ++c) g.E[g.cells[c]] = E[c];
    if (nc == 0) {
        g.b = LMatrix(0, r, d);
        g.bt = LMatrix(0, r, d);
    } else {
        g.b = LMatrix::vstack(top);
        g.bt = LMatrix::vstack(bottom);
    }
    return g;
}

PruneResult prune_zero_rows(const LMatrix& b, const LMatrix& bt) {
    PruneResult p;
    std::vector<LMatrix> keep, keept;
    for (int i = 0; i < b.rows(); ++i) {
        LMatrix x = b.row_at(i), y = bt.row_at(i);
        if (x.is_zero() || y.is_zero()) {
            p.dropped.push_back(i);
            continue;
        }
        keep.push_back(std::move(x));
        keept.push_back(std::move(y));
    }
    if (keep.empty()) {
        p.b = LMatrix(0, b.cols(), b.dim());
        p.bt = LMatrix(0, bt.cols(), bt.dim());
    } else {
        p.b = LMatrix::vstack(keep);
        p.bt = LMatrix::vstack(keept);
    }
    return p;
}

ConstructionTrace construct_dual_multiframelet(const LMatrix& a, const LMatrix& at, const DilationMatrix& M,
                                               const IntMatrix& N, const ConstructOptions& opts) {
    int L = opts.L ? opts.L : construction_field_order(a, at, M);
    int r = a.rows(), d = a.dim();
    ConstructionTrace t;
    t.theta = build_theta_pair(a, at, M, N, L);
    const ThetaPair& tp = t.theta;
    int m = tp.m, mt = tp.mt, n = m + mt;
    const IntMatrix& Me = M.entries;

    t.U = tp.UV;
    t.a_ring = tp.W.U.dilate(Me) * a * tp.W.inv;
    t.at_ring = tp.Wt.U.dilate(Me) * at * tp.Wt.inv;
    const char* stage = "normal form";
    record(t, "a-ring in ideal (mt, n) normal form", verify_ideal_normal_form(t.a_ring, M, mt, n, L), stage);
    record(t, "at-ring in ideal (m, n) normal form", verify_ideal_normal_form(t.at_ring, M, m, n, L), stage);

    t.A = build_Aj(t.a_ring, t.at_ring, M, m, mt, L);
    t.checks.emplace_back("A_j block moment conditions", true);
    t.cells = decompose_all(t.A, M, m, mt, L);
    t.checks.emplace_back("A_j recomposition", true);

    t.gens = assemble_generators(t.cells, M, r, L);
    stage = "assemble_generators";
    LMatrix id = LMatrix::identity(r, d);
    record(t, "M(a-ring, at-ring, I) = P(b-ring)^* P(bt-ring)",
           M_matrix(t.a_ring, t.at_ring, id, M, L) == P_matrix(t.gens.b, M, L).adjoint() * P_matrix(t.gens.bt, M, L),
           stage);
    t.pruned = prune_zero_rows(t.gens.b, t.gens.bt);
    record(t, "dffb for the normalized bank after pruning",
           verify_dffb(t.a_ring, t.at_ring, id, t.pruned.b, t.pruned.bt, M, L).ok(), stage);

    // compact filters, then back to the original variables
    const InvertiblePair& U = tp.UV;
    LMatrix Us = U.U.adjoint(), Uis = U.inv.adjoint();
    LMatrix ma = U.inv.dilate(Me) * t.a_ring * U.U, mta = Us.dilate(Me) * t.at_ring * Uis;
    LMatrix mb = t.pruned.b * U.U, mtb = t.pruned.bt * Uis;
    stage = "back substitution";
    record(t, "theta(M^T.) a theta^{-1} = U^{-1}(M^T.) a-ring U",
           ma == tp.theta.U.dilate(Me) * a * tp.theta.inv, stage);
    record(t, "thetat(M^T.) at thetat^{-1} = U^*(M^T.) at-ring U^{-*}",
           mta == tp.thetat.U.dilate(Me) * at * tp.thetat.inv, stage);

    DualFrameletBank& bank = t.bank;
    bank.d = d;
    bank.r = r;
    bank.L = L;
    bank.M = M;
    bank.N = N;
    bank.a = a;
    bank.at = at;
    bank.theta = tp.theta.U;
    bank.theta_inv = tp.theta.inv;
    bank.thetat = tp.thetat.U;
    bank.thetat_inv = tp.thetat.inv;
    bank.b = mb * tp.theta.U;
    bank.bt = mtb * tp.thetat.U;
    bank.s = bank.b.rows();
    bank.m = m;
    bank.mt = mt;
    bank.v = tp.v;
    bank.vt = tp.vt;
    bank.U = U.U;

    stage = "final bank";
    record(t, "dffb for (a, at, Theta, b, bt)", verify_dffb(bank).ok(), stage);
    record(t, "dffb for the compact bank with Theta = I", verify_dffb(ma, mta, id, mb, mtb, M, L).ok(), stage);
    auto phi = phi_jet_from_mask(a, M, n + 1, L), phit = phi_jet_from_mask(at, M, n + 1, L);
    record(t, "vmo(psi) >= m", generator_vmo(bank.b, phi, M, n + 1, L) >= m, stage);
    record(t, "vmo(psit) >= mt", generator_vmo(bank.bt, phit, M, n + 1, L) >= mt, stage);
    record(t, "compact bank balanced of order m", balancing_order(ma, mb, M, N, m, L) >= m, stage);
    return t;
}

DualFrameletBank construct_scalar(const LMatrix& a, const LMatrix& at, const DilationMatrix& M,
                                  const ConstructOptions& opts) {
    const char* stage = "construct_scalar";
    if (a.rows() != 1 || a.cols() != 1 || at.rows() != 1 || at.cols() != 1)
        throw HypothesisError(stage, "r = 1 required");
    int L = opts.L ? opts.L : construction_field_order(a, at, M);
    int d = a.dim();
    MatchingJet v, vt;
    int mt = checked_sum_rules(a, M, L, stage, "mask", &v);
    int m = checked_sum_rules(at, M, L, stage, "dual mask", &vt);
    int n = m + mt;
    JetMatrix phi = checked_phi(a, M, n, L, stage, "mask").jet;
    JetMatrix phit = checked_phi(at, M, n, L, stage, "dual mask").jet;
    Jet pair = (phi.conj_transpose() * phit)(0, 0);
    if (pair.coeff(0).is_zero()) throw HypothesisError(stage, "conj(phi(0)) phit(0) = 0");
    LMatrix Theta = LMatrix::scalar(taylor_match(pair.inverse(), L));

    auto A = assemble_Aj(a, at, Theta, M, L);
    check_Aj_blocks(A, omega_cosets(M), m, mt, L);
    auto gens = assemble_generators(decompose_all(A, M, m, mt, L), M, 1, L);
    auto pr = prune_zero_rows(gens.b, gens.bt);

    DualFrameletBank bank;
    bank.d = d;
    bank.r = 1;
    bank.L = L;
    bank.M = M;
    bank.N = identity_int(d);
    bank.a = a;
    bank.at = at;
    bank.theta = LMatrix::identity(1, d);
    bank.thetat = Theta;
    bank.b = pr.b;
    bank.bt = pr.bt;
    bank.s = bank.b.rows();
    bank.m = m;
    bank.mt = mt;
    bank.v = v.jet;
    bank.vt = vt.jet;
    expect(verify_dffb(bank).ok(), stage, "dffb fails for the scalar bank");
    return bank;
}

}  // namespace framelet
