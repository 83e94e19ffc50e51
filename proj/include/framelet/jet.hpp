#pragma once

#include <vector>

#include "framelet/lpoly.hpp"

namespace framelet {

// Multi-indices |mu| < n in graded order (degree first, then lexicographic).
struct MonoTable {
    int dim = 1, order = 0;
    std::vector<Index> mono;
    std::vector<int> degree_start;   // first position of each degree, plus end
    int find(const Index& mu) const;
    int size() const { return static_cast<int>(mono.size()); }
};
const MonoTable& mono_table(int dim, int order);

Rational factorial(const Index& mu, int dim);

// Truncated Taylor expansion at xi = 0, stored as Taylor coefficients
// f_mu = d^mu f(0) / mu!.
class Jet {
public:
    Jet() = default;
    Jet(int dim, int order);
    static Jet constant(int dim, int order, const CycNum& c);

    int dim() const { return dim_; }
    int order() const { return order_; }
    const MonoTable& table() const { return mono_table(dim_, order_); }
    const CycNum& coeff(int pos) const { return c_[pos]; }
    CycNum& coeff(int pos) { return c_[pos]; }
    const CycNum& coeff(const Index& mu) const { return c_[table().find(mu)]; }
    CycNum derivative(const Index& mu) const;   // d^mu f(0)
    void set_derivative(const Index& mu, const CycNum& v);

    bool is_zero() const;
    int vanish_order() const;   // first degree with a nonzero coefficient, or order
    Jet truncated(int order) const;
    Jet padded(int order) const;   // higher coefficients zero

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend bool operator==(const Jet& a, const Jet& b);
    Jet scaled(const CycNum& c) const;
    Jet conj() const;                      // jet of conj(f(xi)) for real xi
    Jet compose(const RatMatrix& a) const; // jet of f(A xi)
    Jet inverse() const;                   // needs f(0) != 0

private:
    int dim_ = 1, order_ = 0;
    std::vector<CycNum> c_;
};

class JetMatrix {
public:
    JetMatrix() = default;
    JetMatrix(int rows, int cols, int dim, int order);
    static JetMatrix identity(int r, int dim, int order);
    static JetMatrix unit_row(int r, int pos, int dim, int order);   // e_pos as 1 x r
    static JetMatrix unit_col(int r, int pos, int dim, int order);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int dim() const { return dim_; }
    int order() const { return order_; }
    Jet& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Jet& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    JetMatrix& operator+=(const JetMatrix& o);
    JetMatrix& operator-=(const JetMatrix& o);
    friend JetMatrix operator+(JetMatrix a, const JetMatrix& b) { return a += b; }
    friend JetMatrix operator-(JetMatrix a, const JetMatrix& b) { return a -= b; }
    friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
    friend bool operator==(const JetMatrix& a, const JetMatrix& b);
    JetMatrix scaled(const CycNum& c) const;
    JetMatrix scaled(const Jet& c) const;
    JetMatrix conj_transpose() const;
    JetMatrix transposed() const;
    JetMatrix compose(const RatMatrix& a) const;
    JetMatrix truncated(int order) const;
    JetMatrix padded(int order) const;
    JetMatrix resized(int order) const { return order <= order_ ? truncated(order) : padded(order); }
    JetMatrix value_at_zero() const;   // order 1 copy
    int vanish_order() const;          // min over entries

private:
    int rows_ = 0, cols_ = 0, dim_ = 1, order_ = 0;
    std::vector<Jet> e_;
};

Jet jet_of(const LPoly& u, int order, int L);
JetMatrix jet_of(const LMatrix& u, int order, int L);

// largest m <= cap with every |mu| < m coefficient of u(. + 2 pi omega) zero
int vanish_order(const LMatrix& u, const RatVec& omega, int cap, int L);
int vanish_order(const LPoly& u, const RatVec& omega, int cap, int L);

// LPoly with the given jet, in the basis prod (1 - z_l)^{alpha_l}, |alpha| < n.
LPoly taylor_match(const Jet& j, int L);
LMatrix taylor_match(const JetMatrix& j, int L);

// multi-indices with |alpha| = m, graded-lexicographic
std::vector<Index> multi_indices(int dim, int m);

}  // namespace framelet
