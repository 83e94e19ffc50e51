#include "framelet/linalg.hpp"

#include <stdexcept>

namespace framelet {

CycMatrix CycMatrix::identity(int n) {
    CycMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = CycNum(1L);
    return m;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in product");
    CycMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in sum");
    CycMatrix c = a;
    for (size_t i = 0; i < c.e_.size(); ++i) c.e_[i] += b.e_[i];
    return c;
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch in difference");
    CycMatrix c = a;
    for (size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
    return c;
}

bool operator==(const CycMatrix& a, const CycMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

CycMatrix CycMatrix::conj_transpose() const {
    CycMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

bool CycMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<int> rref(CycMatrix& a) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        CycNum inv = a(r, c).inverse();
        for (int j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero()) a(r, j) *= inv;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            CycNum f = a(i, c);
            for (int j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int rank(CycMatrix a) { return static_cast<int>(rref(a).size()); }

std::optional<std::vector<CycNum>> solve(CycMatrix a, const std::vector<CycNum>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("rhs length mismatch");
    CycMatrix aug(a.rows(), a.cols() + 1);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug(i, j) = std::move(a(i, j));
        aug(i, a.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    std::vector<CycNum> x(a.cols());
    for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), a.cols());
    return x;
}

std::vector<std::vector<CycNum>> nullspace(CycMatrix a) {
    auto piv = rref(a);
    std::vector<char> is_piv(a.cols());
    for (int p : piv) is_piv[p] = 1;
    std::vector<std::vector<CycNum>> basis;
    for (int f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<CycNum> v(a.cols());
        v[f] = CycNum(1L);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

CycMatrix kron(const CycMatrix& a, const CycMatrix& b) {
    CycMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

}  // namespace framelet
