#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "framelet/filterbank.hpp"

namespace framelet {

// Finite data v in l_0(Z^d)^{1 x r} is kept as a 1 x r LMatrix: v_hat(xi) = sum v(k) e^{-i k.xi}.

struct Coefficients {
    TaggedSeq v;                 // v_J
    std::vector<TaggedSeq> w;    // w_1, ..., w_J
};

// analysis: v_j = T_a v_{j-1}, w_j = T_b v_{j-1}
Coefficients analyze(const TaggedSeq& v0, const LMatrix& a, const LMatrix& b, const DilationMatrix& M, int J);
// synthesis without the final deconvolution; Theta = nullptr means Theta = I.
TaggedSeq synthesize(const Coefficients& c, const LMatrix& at, const LMatrix& bt, const DilationMatrix& M,
                     const LMatrix* Theta = nullptr);
// solve x * Theta = vt0 with the exact strong inverse; throws if Theta is not strongly invertible.
TaggedSeq deconvolve(const TaggedSeq& vt0, const LMatrix& Theta);
TaggedSeq deconvolve_with(const TaggedSeq& vt0, const LMatrix& Theta_inv);

enum class Variant { full, compact };

Coefficients analyze(const LMatrix& v0, const DualFrameletBank& bank, int J, Variant variant);
// Runs synthesis (and deconvolution for the full variant) and resolves the scale tag.
LMatrix reconstruct(const Coefficients& c, const DualFrameletBank& bank, Variant variant);

// E_N v = (v(N. + g_1), ..., v(N. + g_r))
LMatrix vectorize(const LPoly& v, const IntMatrix& N);
LPoly devectorize(const LMatrix& v, const IntMatrix& N);

// Polynomial in x with exact coefficients, monomials x^mu.
class Poly {
public:
    Poly() : dim_(1) {}
    explicit Poly(int dim) : dim_(dim) {}
    static Poly monomial(int dim, const Index& mu, const CycNum& c = CycNum(1L));
    static Poly constant(int dim, const CycNum& c) { return monomial(dim, Index(), c); }
    static Poly coordinate(int dim, int l);   // x_l

    int dim() const { return dim_; }
    const std::map<Index, CycNum>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const;   // -1 for zero

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.dim_ == b.dim_ && a.c_ == b.c_; }
    Poly scaled(const CycNum& s) const;
    Poly derivative(const Index& mu) const;
    // p(A x + c)
    Poly affine(const RatMatrix& A, const RatVec& c) const;
    CycNum eval(const IntVec& k) const;

private:
    void add(const Index& mu, const CycNum& v);
    int dim_;
    std::map<Index, CycNum> c_;
};

// 1 x r row of polynomials.
struct PolySeq {
    std::vector<Poly> e;
    ScaleTag tag;
    int degree() const;
    bool is_zero() const;
};

// T_{u,M} p = d_M^{1/2} [p * u^*](M .), computed from the jet of u at 0.
PolySeq poly_transition(const PolySeq& p, const LMatrix& u, const DilationMatrix& M, int L);
// Direct sum over the support of u; used as an oracle.
PolySeq poly_transition_direct(const PolySeq& p, const LMatrix& u, const DilationMatrix& M);
PolySeq poly_vectorize(const Poly& p, const IntMatrix& N);
// q with E_N q = p, when it exists
std::optional<Poly> poly_devectorize(const PolySeq& p, const IntMatrix& N);

struct SparsityReport {
    int vanishing_order = 0;    // w_1..w_levels vanish on E_N(Pi_{k-1}) for all k up to this
    int invariance_order = 0;   // T_a keeps E_N(Pi_{k-1}) for all k up to this
    int order = 0;              // min of the two
    bool random_ok = true;      // random p of degree < m gave zero coefficients
    bool witness = false;       // a degree-m polynomial gives w_1 != 0
    int levels = 3;
};

// Balancing of the filters {a; b} for E_N data, checked symbolically on monomials
// of degree < cap (exact, since the maps are linear) and on random p of degree < m.
SparsityReport balanced_sparsity_check(const LMatrix& a, const LMatrix& b, const DilationMatrix& M,
                                       const IntMatrix& N, int m, int cap, int trials, std::mt19937& rng, int L);
SparsityReport balanced_sparsity_check(const DualFrameletBank& bank, int cap, int trials, std::mt19937& rng);

}  // namespace framelet
