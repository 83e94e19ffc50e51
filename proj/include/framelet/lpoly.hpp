#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "framelet/exactfield.hpp"
#include "framelet/lattice.hpp"

namespace framelet {

constexpr int kMaxDim = 4;

// Integer multi-index; unused trailing coordinates stay zero so comparisons
// ignore the dimension.
struct Index {
    std::array<int, kMaxDim> c{};

    Index() = default;
    static Index from(const IntVec& v);
    static Index unit(int l) {
        Index k;
        k.c[l] = 1;
        return k;
    }
    IntVec to_vec(int dim) const { return IntVec(c.begin(), c.begin() + dim); }
    int total() const { return c[0] + c[1] + c[2] + c[3]; }
    int& operator[](int i) { return c[i]; }
    int operator[](int i) const { return c[i]; }
    Index operator+(const Index& o) const {
        Index r;
        for (int i = 0; i < kMaxDim; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Index operator-(const Index& o) const {
        Index r;
        for (int i = 0; i < kMaxDim; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Index operator-() const { return Index() - *this; }
    auto operator<=>(const Index&) const = default;
};

struct IndexHash {
    size_t operator()(const Index& k) const {
        size_t h = 1469598103934665603ull;
        for (int v : k.c) h = (h ^ static_cast<size_t>(static_cast<unsigned>(v))) * 1099511628211ull;
        return h;
    }
};

Index apply(const IntMatrix& m, const Index& k, int dim);

// Finitely supported map Z^d -> Q(zeta_L); u_hat(xi) = sum_k u(k) exp(-i k.xi).
// Writing z_l = exp(-i xi_l), the term at k is u(k) z^k.
class LPoly {
public:
    using Term = std::pair<Index, CycNum>;

    LPoly() : dim_(1) {}
    explicit LPoly(int dim);
    static LPoly from_terms(int dim, std::vector<Term> terms);   // merges, drops zeros
    static LPoly constant(int dim, const CycNum& c);
    static LPoly delta(int dim) { return constant(dim, CycNum(1L)); }
    static LPoly monomial(int dim, const Index& k, const CycNum& c = CycNum(1L));
    static LPoly nabla(int dim, const Index& alpha);            // prod (1 - z_l)^{alpha_l}

    int dim() const { return dim_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    CycNum coeff(const Index& k) const;
    int field_order() const;

    LPoly operator-() const;
    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    friend bool operator==(const LPoly& a, const LPoly& b);
    friend bool operator!=(const LPoly& a, const LPoly& b) { return !(a == b); }

    LPoly scaled(const CycNum& c) const;
    LPoly adjoint() const;                                // k -> -k, coefficients conjugated
    LPoly dilate(const IntMatrix& m) const;               // u(M^T xi): coefficient at Mk is u(k)
    LPoly shift(const RatVec& omega, int L) const;        // u(xi + 2 pi omega)
    LPoly times_monomial(const Index& k) const;           // z^k u
    LPoly sample(const IntMatrix& m, const Index& gamma) const;   // k -> u(gamma + M k)
    LPoly lifted(int L) const;
    std::complex<double> eval(const std::vector<double>& xi) const;
    std::pair<Index, Index> bounding_box() const;

private:
    int dim_;
    std::vector<Term> terms_;   // sorted by key, no zero coefficients
};

// Grid of LPoly entries, row major.
class LMatrix {
public:
    LMatrix() : rows_(0), cols_(0), dim_(1) {}
    LMatrix(int rows, int cols, int dim);
    static LMatrix identity(int r, int dim);
    static LMatrix scalar(const LPoly& p);
    static LMatrix row(const std::vector<LPoly>& entries);
    static LMatrix column(const std::vector<LPoly>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dim() const { return dim_; }
    LPoly& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const LPoly& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const std::vector<LPoly>& entries() const { return e_; }

    bool is_zero() const;
    int field_order() const;
    size_t total_terms() const;

    LMatrix operator-() const;
    LMatrix& operator+=(const LMatrix& o);
    LMatrix& operator-=(const LMatrix& o);
    friend LMatrix operator+(LMatrix a, const LMatrix& b) { return a += b; }
    friend LMatrix operator-(LMatrix a, const LMatrix& b) { return a -= b; }
    friend LMatrix operator*(const LMatrix& a, const LMatrix& b);
    friend bool operator==(const LMatrix& a, const LMatrix& b);
    friend bool operator!=(const LMatrix& a, const LMatrix& b) { return !(a == b); }

    LMatrix scaled(const CycNum& c) const;
    LMatrix transposed() const;
    LMatrix adjoint() const;
    LMatrix dilate(const IntMatrix& m) const;
    LMatrix shift(const RatVec& omega, int L) const;
    LMatrix map(const std::function<LPoly(const LPoly&)>& f) const;
    LMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const LMatrix& b);
    LMatrix row_at(int i) const { return block(i, 0, 1, cols_); }
    LMatrix lifted(int L) const;

    static LMatrix vstack(const std::vector<LMatrix>& parts);
    static LMatrix hstack(const std::vector<LMatrix>& parts);

private:
    int rows_, cols_, dim_;
    std::vector<LPoly> e_;
};

// Free-function names used across modules.
inline LMatrix adjoint(const LMatrix& u) { return u.adjoint(); }
inline LMatrix freq_dilate(const LMatrix& u, const IntMatrix& m) { return u.dilate(m); }
inline LMatrix freq_shift(const LMatrix& u, const RatVec& omega, int L) { return u.shift(omega, L); }

LPoly determinant(const LMatrix& u);
LMatrix adjugate(const LMatrix& u);
bool is_strongly_invertible(const LMatrix& u);
LMatrix strong_inverse(const LMatrix& u);

// Permutation sending column j to column perm[j] (as a right multiplier).
LMatrix permutation_matrix(const std::vector<int>& perm, int dim);

}  // namespace framelet
