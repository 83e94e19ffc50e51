#include "framelet/division.hpp"

#include <algorithm>
#include <stdexcept>

#include "framelet/jet.hpp"
#include "framelet/linalg.hpp"

namespace framelet {

namespace {

bool integral(const RatVec& w) {
    for (const auto& q : w)
        if (q.get_den() != 1) return false;
    return true;
}

RatVec negated(const RatVec& w) {
    RatVec r(w.size());
    for (size_t i = 0; i < w.size(); ++i) r[i] = -w[i];
    return r;
}

void accumulate(DivisionMap& out, const Index& k, LPoly p) {
    if (p.is_zero()) return;
    auto [it, fresh] = out.try_emplace(k, p);
    if (!fresh) it->second += p;
}

void accumulate(PairDivisionMap& out, const Index& a, const Index& b, LPoly p) {
    if (p.is_zero()) return;
    auto [it, fresh] = out.try_emplace({a, b}, p);
    if (!fresh) it->second += p;
}

template <class Map>
void drop_zeros(Map& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

// One telescoping round: c = sum_l (1 - z_l) q_l, requires c(1, ..., 1) = 0.
std::vector<LPoly> split_once(const LPoly& c) {
    int dim = c.dim();
    std::vector<LPoly> q;
    LPoly cur = c;
    for (int l = 0; l < dim; ++l) {
        // fibers along coordinate l; terms sorted lexicographically, so group by key with k_l zeroed
        std::map<Index, std::vector<std::pair<int, CycNum>>> fibers;
        for (const auto& [k, v] : cur.terms()) {
            Index f = k;
            f[l] = 0;
            fibers[f].emplace_back(k[l], v);
        }
        std::vector<LPoly::Term> quot, rest;
        for (auto& [f, pts] : fibers) {
            std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            CycNum sum;
            for (const auto& p : pts) sum += p.second;
            if (!sum.is_zero()) rest.emplace_back(f, sum);
            // fiber minus its value at z_l = 1 carries the sum at exponent 0
            int lo = std::min(pts.front().first, 0), hi = std::max(pts.back().first, 0);
            CycNum run;
            size_t t = 0;
            for (int j = lo; j < hi; ++j) {
                while (t < pts.size() && pts[t].first == j) run += pts[t++].second;
                CycNum val = j >= 0 ? run - sum : run;
                if (!val.is_zero()) {
                    Index k = f;
                    k[l] = j;
                    quot.emplace_back(k, val);
                }
            }
        }
        q.push_back(LPoly::from_terms(dim, std::move(quot)));
        cur = LPoly::from_terms(dim, std::move(rest));
    }
    if (!cur.is_zero()) throw std::domain_error("insufficient vanishing order for division");
    return q;
}

CycNum sign_pow(int m) { return CycNum(m % 2 ? -1L : 1L); }

}  // namespace

LPoly nabla_factor(int dim, const Index& alpha, Flavor f) {
    LPoly n = LPoly::nabla(dim, alpha);
    return f == Flavor::plain ? n : n.adjoint();
}

DivisionMap divide_at_origin(const LPoly& c, int m, Flavor f) {
    int dim = c.dim();
    DivisionMap cur;
    cur.emplace(Index(), c);
    for (int round = 0; round < m; ++round) {
        DivisionMap next;
        for (const auto& [alpha, p] : cur) {
            auto q = split_once(p);
            for (int l = 0; l < dim; ++l) accumulate(next, alpha + Index::unit(l), std::move(q[l]));
        }
        cur = std::move(next);
    }
    drop_zeros(cur);
    if (f == Flavor::conj)
        // (1 - z)^alpha = (-1)^{|alpha|} z^alpha (1 - z^{-1})^alpha
        for (auto& [alpha, p] : cur) p = p.times_monomial(alpha).scaled(sign_pow(m));
    return cur;
}

DivisionMap divide_at_point(const LPoly& c, int m, const RatVec& omega, int L) {
    if (integral(omega)) return divide_at_origin(c, m);
    DivisionMap parts = divide_at_origin(c.shift(negated(omega), L), m);
    for (auto& [beta, p] : parts) p = p.shift(omega, L);
    return parts;
}

PairDivisionMap divide_two_point(const LPoly& c, int m, int mt, const RatVec& omega, int L) {
    int dim = c.dim();
    PairDivisionMap out;
    if (c.is_zero()) return out;
    if (integral(omega)) {
        if (vanish_order(c, RatVec(dim), m + mt, L) < m + mt)
            throw std::domain_error("two-point division: insufficient order at the origin");
        for (auto& [gamma, p] : divide_at_origin(c, m + mt)) {
            Index alpha, beta = gamma;
            int need = m;
            for (int l = 0; l < dim && need > 0; ++l) {
                int take = std::min(need, gamma[l]);
                alpha[l] = take;
                beta[l] -= take;
                need -= take;
            }
            accumulate(out, alpha, beta, p.times_monomial(alpha).scaled(sign_pow(m)));
        }
        drop_zeros(out);
        return out;
    }
    if (vanish_order(c, RatVec(dim), m, L) < m) throw std::domain_error("two-point division: insufficient order at the origin");
    if (vanish_order(c, negated(omega), mt, L) < mt)
        throw std::domain_error("two-point division: insufficient order at the shifted point");

    int l = 0;
    while (omega[l].get_den() == 1) ++l;
    const Rational& w = omega[l];
    CycNum zeta = root_of_unity(w.get_num().get_si(), w.get_den().get_si(), L);   // exp(-2 pi i omega_l)
    CycNum inv1mz = (CycNum::one(L) - zeta).inverse();
    Index el = Index::unit(l);
    // v = (1 - zeta z_l) / (1 - zeta)
    LPoly v = (LPoly::delta(dim) - LPoly::monomial(dim, el, zeta)).scaled(inv1mz);
    LPoly vmt = LPoly::delta(dim);
    for (int i = 0; i < mt; ++i) vmt = vmt * v;

    // c (1 - u) = conj(nabla^{m e_l}) * (zeta/(1-zeta))^m z_l^m S^m c, S = sum_{i<mt} v^i
    LPoly s(dim), vp = LPoly::delta(dim);
    for (int i = 0; i < mt; ++i) {
        s += vp;
        vp = vp * v;
    }
    LPoly r = c;
    CycNum coef = CycNum::one(L);
    for (int i = 0; i < m; ++i) {
        r = r * s;
        coef *= zeta * inv1mz;
    }
    Index alpha_l;
    alpha_l[l] = m;
    r = r.times_monomial(alpha_l).scaled(coef);
    for (auto& [beta, p] : divide_at_point(r, mt, omega, L)) accumulate(out, alpha_l, beta, std::move(p));

    // c u = [(1-zeta)^{-mt} T c] * nabla^{mt e_l}(xi + 2 pi omega), T = sum_k binom(m,k)(-1)^{k+1} v^{mt(k-1)}
    LPoly t(dim), pw = LPoly::delta(dim);
    Integer binom = 1;
    for (int k = 1; k <= m; ++k) {
        binom = binom * (m - k + 1) / k;
        t += pw.scaled(CycNum(Rational(k % 2 ? binom : Integer(-binom))));
        pw = pw * vmt;
    }
    CycNum scale = CycNum::one(L);
    for (int i = 0; i < mt; ++i) scale *= inv1mz;
    Index beta_l;
    beta_l[l] = mt;
    LPoly p = (t * c).scaled(scale);
    for (auto& [alpha, q] : divide_at_origin(p, m, Flavor::conj)) accumulate(out, alpha, beta_l, std::move(q));
    drop_zeros(out);
    return out;
}

std::optional<PairDivisionMap> divide_two_point_solve(const LPoly& c, int m, int mt, const RatVec& omega, int L,
                                                      int max_radius) {
    int dim = c.dim();
    auto left = multi_indices(dim, m), right = multi_indices(dim, mt);
    for (int radius = 0; radius <= max_radius; ++radius) {
        std::vector<Index> box;
        Index k;
        for (int i = 0; i < dim; ++i) k[i] = -radius;
        while (true) {
            box.push_back(k);
            int i = 0;
            while (i < dim && ++k[i] > radius) {
                k[i] = -radius;
                ++i;
            }
            if (i == dim) break;
        }
        struct Col {
            Index a, b, k;
            LPoly poly;
        };
        std::vector<Col> cols;
        std::map<Index, int> rows;
        for (const auto& a : left)
            for (const auto& b : right) {
                LPoly base = nabla_factor(dim, a, Flavor::conj) * LPoly::nabla(dim, b).shift(omega, L);
                for (const auto& kk : box) {
                    LPoly p = base.times_monomial(kk);
                    for (const auto& [key, val] : p.terms()) rows.try_emplace(key, static_cast<int>(rows.size()));
                    cols.push_back({a, b, kk, std::move(p)});
                }
            }
        bool fits = true;
        for (const auto& [key, val] : c.terms()) fits = fits && rows.count(key);
        if (!fits) continue;
        CycMatrix mat(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [key, val] : cols[j].poly.terms()) mat(rows[key], static_cast<int>(j)) = val;
        std::vector<CycNum> rhs(rows.size());
        for (const auto& [key, val] : c.terms()) rhs[rows[key]] = val;
        auto x = solve(std::move(mat), rhs);
        if (!x) continue;
        PairDivisionMap out;
        for (size_t j = 0; j < cols.size(); ++j)
            if (!(*x)[j].is_zero()) accumulate(out, cols[j].a, cols[j].b, LPoly::monomial(dim, cols[j].k, (*x)[j]));
        drop_zeros(out);
        return out;
    }
    return std::nullopt;
}

LPoly recompose_origin(const DivisionMap& parts, int dim, Flavor f) {
    LPoly s(dim);
    for (const auto& [alpha, p] : parts) s += nabla_factor(dim, alpha, f) * p;
    return s;
}

LPoly recompose_point(const DivisionMap& parts, int dim, const RatVec& omega, int L) {
    LPoly s(dim);
    for (const auto& [beta, p] : parts) s += LPoly::nabla(dim, beta).shift(omega, L) * p;
    return s;
}

LPoly recompose_two_point(const PairDivisionMap& parts, int dim, const RatVec& omega, int L) {
    LPoly s(dim);
    for (const auto& [ab, p] : parts)
        s += nabla_factor(dim, ab.first, Flavor::conj) * p * LPoly::nabla(dim, ab.second).shift(omega, L);
    return s;
}

}  // namespace framelet
