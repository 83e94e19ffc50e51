#include "framelet/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace framelet::kernels {

namespace {

int common_order(const LPoly& a, const LPoly& b) {
    int la = a.field_order(), lb = b.field_order();
    if (la && lb && la != lb) throw std::invalid_argument("mismatched field orders in convolution");
    return la ? la : lb;
}

// Cyclotomic-integer numerators over one common denominator.
struct Lifted {
    int phi = 1;
    Integer den = 1;
    std::vector<Index> keys;
    std::vector<Integer> num;   // keys.size() * phi
};

Lifted lift(const LPoly& p, int L) {
    Lifted out;
    out.phi = L ? euler_phi(L) : 1;
    for (const auto& [k, v] : p.terms())
        for (const auto& q : v.coeffs()) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), q.get_den_mpz_t());
    out.keys.reserve(p.size());
    out.num.resize(p.size() * out.phi);
    size_t t = 0;
    for (const auto& [k, v] : p.terms()) {
        out.keys.push_back(k);
        const auto& c = v.coeffs();
        for (size_t j = 0; j < c.size(); ++j) {
            Integer& dst = out.num[t * out.phi + j];
            mpz_divexact(dst.get_mpz_t(), out.den.get_mpz_t(), c[j].get_den_mpz_t());
            dst *= c[j].get_num();
        }
        ++t;
    }
    return out;
}

// Reduce an unreduced product vector (length 2 phi - 1) to a CycNum.
CycNum lower(std::vector<Integer>& acc, int phi, int L, const Integer& den) {
    if (L == 0) {
        Rational q(acc[0], den);
        q.canonicalize();
        return CycNum(q);
    }
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (acc[k] == 0) continue;
        const auto& pm = zeta_power_coeffs(L, k);
        for (int j = 0; j < phi; ++j)
            if (pm[j] != 0) acc[j] += acc[k] * pm[j];
        acc[k] = 0;
    }
    std::vector<Rational> c(phi);
    for (int j = 0; j < phi; ++j) {
        c[j] = Rational(acc[j], den);
        c[j].canonicalize();
    }
    return CycNum(L, std::move(c));
}

bool all_zero(const Integer* p, int n) {
    for (int i = 0; i < n; ++i)
        if (p[i] != 0) return false;
    return true;
}

inline void mul_acc(Integer* acc, const Integer* x, const Integer* y, int phi) {
    for (int i = 0; i < phi; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < phi; ++j) mpz_addmul(acc[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
}

struct Box {
    Index lo, hi;
    int dim;
    long long extent(int i) const { return static_cast<long long>(hi[i]) - lo[i] + 1; }
    long long volume(int from) const {
        long long v = 1;
        for (int i = from; i < dim; ++i) v *= extent(i);
        return v;
    }
    bool contains(const Index& k) const {
        for (int i = 0; i < dim; ++i)
            if (k[i] < lo[i] || k[i] > hi[i]) return false;
        return true;
    }
    // linear position of k ignoring coordinates before `from`
    long long pos(const Index& k, int from) const {
        long long p = 0;
        for (int i = from; i < dim; ++i) p = p * extent(i) + (k[i] - lo[i]);
        return p;
    }
};

Box box_of(const LPoly& p) {
    auto [lo, hi] = p.bounding_box();
    return Box{lo, hi, p.dim()};
}

}  // namespace

LPoly convolve_serial(const LPoly& a, const LPoly& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in convolution");
    std::unordered_map<Index, CycNum, IndexHash> acc;
    for (const auto& [ka, va] : a.terms())
        for (const auto& [kb, vb] : b.terms()) {
            auto [it, fresh] = acc.try_emplace(ka + kb, va * vb);
            if (!fresh) it->second += va * vb;
        }
    std::vector<LPoly::Term> terms(acc.begin(), acc.end());
    return LPoly::from_terms(a.dim(), std::move(terms));
}

LPoly convolve_parallel(const LPoly& a, const LPoly& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch in convolution");
    int dim = a.dim();
    if (a.is_zero() || b.is_zero()) return LPoly(dim);
    int L = common_order(a, b);
    Lifted la = lift(a, L), lb = lift(b, L);
    int phi = la.phi, wide = 2 * phi - 1;
    Box ba = box_of(a), bb = box_of(b);
    Box out{ba.lo + bb.lo, ba.hi + bb.hi, dim};
    long long slab = out.volume(1);
    if (slab * wide > (1LL << 26)) return convolve_serial(a, b);

    // b terms grouped by first coordinate (terms are sorted, so groups are contiguous)
    std::vector<std::pair<size_t, size_t>> group(bb.extent(0), {0, 0});
    for (size_t t = 0; t < lb.keys.size();) {
        size_t u = t;
        while (u < lb.keys.size() && lb.keys[u][0] == lb.keys[t][0]) ++u;
        group[lb.keys[t][0] - bb.lo[0]] = {t, u};
        t = u;
    }
    Integer den = la.den * lb.den;
    long long nslabs = out.extent(0);
    std::vector<std::vector<LPoly::Term>> pieces(nslabs);

#pragma omp parallel
    {
        std::vector<Integer> acc(slab * wide);
        std::vector<char> touched(slab);
        std::vector<Integer> cell(wide);
#pragma omp for schedule(dynamic)
        for (long long s = 0; s < nslabs; ++s) {
            int x = out.lo[0] + static_cast<int>(s);
            bool any = false;
            for (size_t ta = 0; ta < la.keys.size(); ++ta) {
                long long gb = static_cast<long long>(x) - la.keys[ta][0] - bb.lo[0];
                if (gb < 0 || gb >= bb.extent(0)) continue;
                auto [from, to] = group[gb];
                const Integer* xa = &la.num[ta * phi];
                for (size_t tb = from; tb < to; ++tb) {
                    long long p = out.pos(la.keys[ta] + lb.keys[tb], 1);
                    mul_acc(&acc[p * wide], xa, &lb.num[tb * phi], phi);
                    touched[p] = 1;
                    any = true;
                }
            }
            if (!any) continue;
            Index k;
            k[0] = x;
            for (long long p = 0; p < slab; ++p) {
                if (!touched[p]) continue;
                touched[p] = 0;
                long long rem = p;
                for (int i = dim - 1; i >= 1; --i) {
                    k[i] = out.lo[i] + static_cast<int>(rem % out.extent(i));
                    rem /= out.extent(i);
                }
                Integer* cp = &acc[p * wide];
                if (!all_zero(cp, wide)) {
                    for (int j = 0; j < wide; ++j) cell[j] = cp[j];
                    CycNum v = lower(cell, phi, L, den);
                    if (!v.is_zero()) pieces[s].emplace_back(k, std::move(v));
                }
                for (int j = 0; j < wide; ++j) cp[j] = 0;
            }
        }
    }
    std::vector<LPoly::Term> terms;
    for (auto& p : pieces)
        for (auto& t : p) terms.push_back(std::move(t));
    return LPoly::from_terms(dim, std::move(terms));
}

LPoly convolve_sample_serial(const LPoly& a, const LPoly& b, const IntMatrix& m) {
    LPoly full = convolve_serial(a, b);
    RatMatrix inv = rat_inverse(m);
    std::vector<LPoly::Term> terms;
    for (const auto& [k, v] : full.terms()) {
        RatVec n = rat_apply(inv, k.to_vec(a.dim()));
        if (std::all_of(n.begin(), n.end(), [](const Rational& q) { return q.get_den() == 1; })) {
            Index kn;
            for (int i = 0; i < a.dim(); ++i) kn[i] = static_cast<int>(n[i].get_num().get_si());
            terms.emplace_back(kn, v);
        }
    }
    return LPoly::from_terms(a.dim(), std::move(terms));
}

LPoly convolve_sample(const LPoly& a0, const LPoly& b0, const IntMatrix& m) {
    int dim = a0.dim();
    if (a0.is_zero() || b0.is_zero()) return LPoly(dim);
    const LPoly& a = a0.size() <= b0.size() ? a0 : b0;   // iterate the smaller one
    const LPoly& b = a0.size() <= b0.size() ? b0 : a0;
    int L = common_order(a, b);
    Lifted la = lift(a, L), lb = lift(b, L);
    int phi = la.phi, wide = 2 * phi - 1;
    Box ba = box_of(a), bb = box_of(b);
    if (bb.volume(0) > (1LL << 26)) return convolve_sample_serial(a0, b0, m);
    std::vector<int> where(bb.volume(0), -1);
    for (size_t t = 0; t < lb.keys.size(); ++t) where[bb.pos(lb.keys[t], 0)] = static_cast<int>(t);

    // candidate outputs n with M n inside the full product box
    Box full{ba.lo + bb.lo, ba.hi + bb.hi, dim};
    RatMatrix inv = rat_inverse(m);
    Index nlo, nhi;
    for (int i = 0; i < dim; ++i) {
        nlo[i] = INT32_MAX;
        nhi[i] = INT32_MIN;
    }
    for (int corner = 0; corner < (1 << dim); ++corner) {
        IntVec c(dim);
        for (int i = 0; i < dim; ++i) c[i] = (corner >> i & 1) ? full.hi[i] : full.lo[i];
        RatVec x = rat_apply(inv, c);
        for (int i = 0; i < dim; ++i) {
            Integer fl, ce;
            mpz_fdiv_q(fl.get_mpz_t(), x[i].get_num_mpz_t(), x[i].get_den_mpz_t());
            mpz_cdiv_q(ce.get_mpz_t(), x[i].get_num_mpz_t(), x[i].get_den_mpz_t());
            nlo[i] = std::min(nlo[i], static_cast<int>(fl.get_si()));
            nhi[i] = std::max(nhi[i], static_cast<int>(ce.get_si()));
        }
    }
    Box nb{nlo, nhi, dim};
    long long count = nb.volume(0);
    Integer den = la.den * lb.den;
    std::vector<std::pair<bool, LPoly::Term>> slots(count);

#pragma omp parallel
    {
        std::vector<Integer> acc(wide);
#pragma omp for schedule(dynamic, 16)
        for (long long p = 0; p < count; ++p) {
            Index n;
            long long rem = p;
            for (int i = dim - 1; i >= 0; --i) {
                n[i] = nb.lo[i] + static_cast<int>(rem % nb.extent(i));
                rem /= nb.extent(i);
            }
            Index mn = apply(m, n, dim);
            if (!full.contains(mn)) continue;
            bool any = false;
            for (size_t ta = 0; ta < la.keys.size(); ++ta) {
                Index kb = mn - la.keys[ta];
                if (!bb.contains(kb)) continue;
                int tb = where[bb.pos(kb, 0)];
                if (tb < 0) continue;
                mul_acc(acc.data(), &la.num[ta * phi], &lb.num[tb * phi], phi);
                any = true;
            }
            if (!any) continue;
            if (!all_zero(acc.data(), wide)) {
                CycNum v = lower(acc, phi, L, den);
                if (!v.is_zero()) slots[p] = {true, {n, std::move(v)}};
            }
            for (auto& z : acc) z = 0;
        }
    }
    std::vector<LPoly::Term> terms;
    for (auto& [used, t] : slots)
        if (used) terms.push_back(std::move(t));
    return LPoly::from_terms(dim, std::move(terms));
}

}  // namespace framelet::kernels
