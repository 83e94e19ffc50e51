#pragma once

#include <random>

#include "framelet/division.hpp"
#include "framelet/jet.hpp"
#include "framelet/lpoly.hpp"
#include "framelet/masks.hpp"

namespace testutil {

using namespace framelet;

inline Rational small_rational(std::mt19937& rng, int span = 5, int den = 4) {
    std::uniform_int_distribution<int> n(-span, span), d(1, den);
    Rational q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline CycNum random_cyc(std::mt19937& rng, int L, bool real = false) {
    if (L == 0) return CycNum(small_rational(rng));
    std::vector<Rational> c(euler_phi(L));
    c[0] = small_rational(rng);
    if (!real)
        for (size_t j = 1; j < c.size(); ++j) c[j] = small_rational(rng);
    return CycNum(L, c);
}

// random LPoly with keys in [lo, hi]^dim
inline LPoly random_lpoly(std::mt19937& rng, int dim, int L, int lo, int hi, int terms, bool real = false) {
    std::uniform_int_distribution<int> key(lo, hi);
    std::vector<LPoly::Term> t;
    for (int i = 0; i < terms; ++i) {
        Index k;
        for (int l = 0; l < dim; ++l) k[l] = key(rng);
        t.emplace_back(k, random_cyc(rng, L, real));
    }
    return LPoly::from_terms(dim, t);
}

inline LMatrix random_lmatrix(std::mt19937& rng, int rows, int cols, int dim, int L, int lo, int hi, int terms) {
    LMatrix m(rows, cols, dim);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = random_lpoly(rng, dim, L, lo, hi, terms);
    return m;
}

inline Jet random_jet(std::mt19937& rng, int dim, int order, int L) {
    Jet j(dim, order);
    for (int p = 0; p < j.table().size(); ++p) j.coeff(p) = random_cyc(rng, L);
    return j;
}

inline LPoly lp(int dim, std::initializer_list<std::pair<IntVec, Rational>> terms) {
    std::vector<LPoly::Term> t;
    for (const auto& [k, v] : terms) t.emplace_back(Index::from(k), CycNum(v));
    return LPoly::from_terms(dim, t);
}

// random omega in (1/den) Z^d cut to [0,1)^d
inline RatVec random_omega(std::mt19937& rng, int dim, int den) {
    std::uniform_int_distribution<int> k(0, den - 1);
    RatVec w(dim);
    for (auto& q : w) {
        q = Rational(k(rng), den);
        q.canonicalize();
    }
    return w;
}

// sum over |alpha| = m of left factor * random, right factor * random, or both
inline LPoly admissible_origin(std::mt19937& rng, int dim, int m, int L, Flavor f) {
    LPoly c(dim);
    for (const auto& a : multi_indices(dim, m)) c += nabla_factor(dim, a, f) * random_lpoly(rng, dim, L, -1, 1, 3);
    return c;
}

inline LPoly admissible_point(std::mt19937& rng, int dim, int m, const RatVec& w, int L) {
    LPoly c(dim);
    for (const auto& b : multi_indices(dim, m)) c += LPoly::nabla(dim, b).shift(w, L) * random_lpoly(rng, dim, L, -1, 1, 3);
    return c;
}

inline LPoly admissible_two_point(std::mt19937& rng, int dim, int m, int mt, const RatVec& w, int L) {
    LPoly c(dim);
    for (const auto& a : multi_indices(dim, m))
        for (const auto& b : multi_indices(dim, mt))
            c += nabla_factor(dim, a, Flavor::conj) * random_lpoly(rng, dim, L, -1, 1, 2) *
                 LPoly::nabla(dim, b).shift(w, L);
    return c;
}

// product of unit triangular factors with random off-diagonal entries, then a permutation
inline LMatrix random_strongly_invertible(std::mt19937& rng, int r, int dim, int L, int factors = 2) {
    LMatrix u = LMatrix::identity(r, dim);
    std::uniform_int_distribution<int> pick(0, r - 1);
    for (int f = 0; f < factors; ++f) {
        LMatrix e = LMatrix::identity(r, dim);
        int i = pick(rng), j = pick(rng);
        if (i == j) j = (i + 1) % r;
        e(i, j) = random_lpoly(rng, dim, L, -1, 1, 2, true);
        u = u * e;
    }
    int s = pick(rng);
    std::vector<int> perm(r);
    for (int i = 0; i < r; ++i) perm[i] = (i + s) % r;
    return u * permutation_matrix(perm, dim);
}

// U(M^T .) a U^{-1} keeps sum rules, eigen-structure and refinability
inline LMatrix conjugate_mask(const LMatrix& a, const LMatrix& u, const IntMatrix& M) {
    return u.dilate(M) * a * strong_inverse(u);
}

}  // namespace testutil
