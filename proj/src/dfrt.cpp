#include "framelet/dfrt.hpp"

#include <stdexcept>

#include "framelet/jet.hpp"

namespace framelet {

// ---------------------------------------------------------------- transform

Coefficients analyze(const TaggedSeq& v0, const LMatrix& a, const LMatrix& b, const DilationMatrix& M, int J) {
    if (J < 0) throw std::invalid_argument("analyze: negative level count");
    Coefficients c{v0, {}};
    for (int j = 0; j < J; ++j) {
        c.w.push_back(transition(c.v, b, M));
        c.v = transition(c.v, a, M);
    }
    return c;
}

TaggedSeq synthesize(const Coefficients& c, const LMatrix& at, const LMatrix& bt, const DilationMatrix& M,
                     const LMatrix* Theta) {
    TaggedSeq v = c.v;
    if (Theta) v.v = v.v * *Theta;
    for (int j = static_cast<int>(c.w.size()) - 1; j >= 0; --j)
        v = add_tagged(subdivision(v, at, M), subdivision(c.w[j], bt, M), M);
    return v;
}

TaggedSeq deconvolve_with(const TaggedSeq& vt0, const LMatrix& Theta_inv) { return {vt0.v * Theta_inv, vt0.tag}; }

TaggedSeq deconvolve(const TaggedSeq& vt0, const LMatrix& Theta) { return deconvolve_with(vt0, strong_inverse(Theta)); }

Coefficients analyze(const LMatrix& v0, const DualFrameletBank& bank, int J, Variant variant) {
    TaggedSeq t{v0, ScaleTag{}};
    if (variant == Variant::full) return analyze(t, bank.a, bank.b, bank.M, J);
    auto c = compact_filters(bank);
    return analyze(t, c.a, c.b, bank.M, J);
}

LMatrix reconstruct(const Coefficients& c, const DualFrameletBank& bank, Variant variant) {
    if (variant == Variant::compact) {
        auto cf = compact_filters(bank);
        return resolve(synthesize(c, cf.at, cf.bt, bank.M), bank.M);
    }
    LMatrix Theta = bank.Theta();
    TaggedSeq vt = synthesize(c, bank.at, bank.bt, bank.M, &Theta);
    if (bank.invertible()) return resolve(deconvolve_with(vt, bank.thetat_inv * bank.theta_inv.adjoint()), bank.M);
    return resolve(deconvolve(vt, Theta), bank.M);
}

LMatrix vectorize(const LPoly& v, const IntMatrix& N) {
    auto gam = gamma_cosets(N);
    LMatrix out(1, static_cast<int>(gam.size()), v.dim());
    for (size_t k = 0; k < gam.size(); ++k) out(0, static_cast<int>(k)) = v.sample(N, Index::from(gam[k]));
    return out;
}

LPoly devectorize(const LMatrix& v, const IntMatrix& N) {
    auto gam = gamma_cosets(N);
    if (v.rows() != 1 || v.cols() != static_cast<int>(gam.size()))
        throw std::invalid_argument("devectorize: expected a 1 x |det N| row");
    LPoly out(v.dim());
    for (size_t k = 0; k < gam.size(); ++k)
        out += v(0, static_cast<int>(k)).dilate(N).times_monomial(Index::from(gam[k]));
    return out;
}

// ---------------------------------------------------------------- Poly

void Poly::add(const Index& mu, const CycNum& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = c_.try_emplace(mu, v);
    if (fresh) return;
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

Poly Poly::monomial(int dim, const Index& mu, const CycNum& c) {
    Poly p(dim);
    p.add(mu, c);
    return p;
}

Poly Poly::coordinate(int dim, int l) { return monomial(dim, Index::unit(l)); }

int Poly::degree() const {
    int d = -1;
    for (const auto& t : c_) d = std::max(d, t.first.total());
    return d;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [mu, v] : o.c_) add(mu, v);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [mu, v] : o.c_) add(mu, -v);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly p(a.dim_);
    for (const auto& [m1, v1] : a.c_)
        for (const auto& [m2, v2] : b.c_) p.add(m1 + m2, v1 * v2);
    return p;
}

Poly Poly::scaled(const CycNum& s) const {
    Poly p(dim_);
    for (const auto& [mu, v] : c_) p.add(mu, v * s);
    return p;
}

Poly Poly::derivative(const Index& mu) const {
    Poly p(dim_);
    for (const auto& [nu, v] : c_) {
        Integer f = 1;
        bool ok = true;
        for (int l = 0; l < dim_ && ok; ++l) {
            if (nu[l] < mu[l]) ok = false;
            for (int t = 0; ok && t < mu[l]; ++t) f *= nu[l] - t;
        }
        if (ok) p.add(nu - mu, v * CycNum(Rational(f)));
    }
    return p;
}

Poly Poly::affine(const RatMatrix& A, const RatVec& c) const {
    std::vector<Poly> lin;
    for (int l = 0; l < dim_; ++l) {
        Poly x = constant(dim_, CycNum(c.empty() ? Rational(0) : c[l]));
        for (int j = 0; j < dim_; ++j) x += coordinate(dim_, j).scaled(CycNum(A[l][j]));
        lin.push_back(std::move(x));
    }
    Poly out(dim_);
    for (const auto& [mu, v] : c_) {
        Poly t = constant(dim_, v);
        for (int l = 0; l < dim_; ++l)
            for (int e = 0; e < mu[l]; ++e) t = t * lin[l];
        out += t;
    }
    return out;
}

CycNum Poly::eval(const IntVec& k) const {
    CycNum s;
    for (const auto& [mu, v] : c_) {
        Rational x = 1;
        for (int l = 0; l < dim_; ++l)
            for (int e = 0; e < mu[l]; ++e) x *= Rational(static_cast<long>(k[l]));
        s += v * CycNum(x);
    }
    return s;
}

int PolySeq::degree() const {
    int d = -1;
    for (const auto& p : e) d = std::max(d, p.degree());
    return d;
}

bool PolySeq::is_zero() const {
    for (const auto& p : e)
        if (!p.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- polynomial data

PolySeq poly_transition(const PolySeq& p, const LMatrix& u, const DilationMatrix& M, int L) {
    int r = u.cols(), s = u.rows(), dim = u.dim();
    if (static_cast<int>(p.e.size()) != r) throw std::invalid_argument("poly_transition: shape mismatch");
    int order = std::max(p.degree(), 0) + 1;
    JetMatrix ws = jet_of(u.adjoint(), order, L);
    const MonoTable& tab = mono_table(dim, order);
    PolySeq out{std::vector<Poly>(s, Poly(dim)), p.tag.compose(ScaleTag{1})};
    for (int l = 0; l < r; ++l) {
        if (p.e[l].is_zero()) continue;
        for (int pos = 0; pos < tab.size(); ++pos) {
            const Index& al = tab.mono[pos];
            Poly dp = p.e[l].derivative(al);
            if (dp.is_zero()) continue;
            CycNum f = minus_i_pow(al.total(), L);
            for (int j = 0; j < s; ++j) {
                const CycNum& c = ws(l, j).coeff(pos);
                if (!c.is_zero()) out.e[j] += dp.scaled(f * c);
            }
        }
    }
    RatMatrix Mr(dim, RatVec(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) Mr[i][j] = Rational(static_cast<long>(M.entries[i][j]));
    for (auto& q : out.e) q = q.affine(Mr, {});
    return out;
}

PolySeq poly_transition_direct(const PolySeq& p, const LMatrix& u, const DilationMatrix& M) {
    int r = u.cols(), s = u.rows(), dim = u.dim();
    if (static_cast<int>(p.e.size()) != r) throw std::invalid_argument("poly_transition: shape mismatch");
    RatMatrix id(dim, RatVec(dim));
    for (int i = 0; i < dim; ++i) id[i][i] = 1;
    PolySeq out{std::vector<Poly>(s, Poly(dim)), p.tag.compose(ScaleTag{1})};
    // [p * u^*](x) = sum_k p(x + k) conj(u(k))^T
    for (int j = 0; j < s; ++j)
        for (int l = 0; l < r; ++l)
            for (const auto& [k, c] : u(j, l).terms()) {
                RatVec shift(dim);
                for (int i = 0; i < dim; ++i) shift[i] = Rational(k[i]);
                out.e[j] += p.e[l].affine(id, shift).scaled(c.conj());
            }
    RatMatrix Mr(dim, RatVec(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) Mr[i][j] = Rational(static_cast<long>(M.entries[i][j]));
    for (auto& q : out.e) q = q.affine(Mr, {});
    return out;
}

PolySeq poly_vectorize(const Poly& p, const IntMatrix& N) {
    int dim = p.dim();
    RatMatrix Nr(dim, RatVec(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) Nr[i][j] = Rational(static_cast<long>(N[i][j]));
    PolySeq out;
    for (const auto& g : gamma_cosets(N)) {
        RatVec c;
        for (long long x : g) c.emplace_back(static_cast<long>(x));
        out.e.push_back(p.affine(Nr, c));
    }
    return out;
}

std::optional<Poly> poly_devectorize(const PolySeq& p, const IntMatrix& N) {
    if (p.e.empty()) return std::nullopt;
    // gamma_1 = 0, so q = p_1(N^{-1} .)
    Poly q = p.e[0].affine(rat_inverse(N), {});
    PolySeq back = poly_vectorize(q, N);
    if (back.e.size() != p.e.size()) return std::nullopt;
    for (size_t k = 0; k < p.e.size(); ++k)
        if (!(back.e[k] == p.e[k])) return std::nullopt;
    return q;
}

// ---------------------------------------------------------------- balancing

namespace {

struct LevelResult {
    bool zero = true;        // all w_j vanish
    bool invariant = true;   // every v_j is in E_N(Pi_{deg})
    bool w1_nonzero = false;
};

LevelResult run_levels(const Poly& p, const LMatrix& a, const LMatrix& b, const DilationMatrix& M,
                       const IntMatrix& N, int levels, int L) {
    LevelResult res;
    PolySeq v = poly_vectorize(p, N);
    int deg = p.degree();
    for (int j = 0; j < levels; ++j) {
        PolySeq w = poly_transition(v, b, M, L);
        if (!w.is_zero()) {
            res.zero = false;
            if (j == 0) res.w1_nonzero = true;
        }
        v = poly_transition(v, a, M, L);
        auto q = poly_devectorize(v, N);
        if (!q || q->degree() > deg) res.invariant = false;
    }
    return res;
}

Poly random_poly(std::mt19937& rng, int dim, int degree) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Poly p(dim);
    for (int k = 0; k <= degree; ++k)
        for (const auto& mu : multi_indices(dim, k))
            p += Poly::monomial(dim, mu, CycNum(Rational(num(rng), den(rng))));
    return p;
}

}  // namespace

SparsityReport balanced_sparsity_check(const LMatrix& a, const LMatrix& b, const DilationMatrix& M,
                                       const IntMatrix& N, int m, int cap, int trials, std::mt19937& rng, int L) {
    SparsityReport rep;
    int dim = a.dim();
    bool vanish = true, inv = true;
    for (int k = 0; k < cap && (vanish || inv); ++k) {
        for (const auto& mu : multi_indices(dim, k)) {
            auto lr = run_levels(Poly::monomial(dim, mu), a, b, M, N, rep.levels, L);
            vanish = vanish && lr.zero;
            inv = inv && lr.invariant;
        }
        if (vanish) rep.vanishing_order = k + 1;
        if (inv) rep.invariance_order = k + 1;
    }
    rep.order = std::min(rep.vanishing_order, rep.invariance_order);

    for (int t = 0; t < trials && m > 0; ++t) {
        auto lr = run_levels(random_poly(rng, dim, m - 1), a, b, M, N, rep.levels, L);
        if (!lr.zero || !lr.invariant) rep.random_ok = false;
    }
    for (const auto& mu : multi_indices(dim, m)) {
        PolySeq w = poly_transition(poly_vectorize(Poly::monomial(dim, mu), N), b, M, L);
        if (!w.is_zero()) {
            rep.witness = true;
            break;
        }
    }
    return rep;
}

SparsityReport balanced_sparsity_check(const DualFrameletBank& bank, int cap, int trials, std::mt19937& rng) {
    if (bank.invertible()) {
        auto c = compact_filters(bank);
        return balanced_sparsity_check(c.a, c.b, bank.M, bank.N, bank.m, cap, trials, rng, bank.L);
    }
    return balanced_sparsity_check(bank.a, bank.b, bank.M, bank.N, bank.m, cap, trials, rng, bank.L);
}

}  // namespace framelet
