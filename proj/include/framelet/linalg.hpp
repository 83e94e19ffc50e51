#pragma once

#include <optional>
#include <vector>

#include "framelet/exactfield.hpp"

namespace framelet {

// Dense matrix over Q(zeta_L), row major.
class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
    static CycMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    CycNum& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const CycNum& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
    friend bool operator==(const CycMatrix& a, const CycMatrix& b);
    CycMatrix conj_transpose() const;
    bool is_zero() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<CycNum> e_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(CycMatrix& a);
int rank(CycMatrix a);
// Some x with a x = b, or nothing when inconsistent. Free variables are set to zero.
std::optional<std::vector<CycNum>> solve(CycMatrix a, const std::vector<CycNum>& b);
std::vector<std::vector<CycNum>> nullspace(CycMatrix a);
CycMatrix kron(const CycMatrix& a, const CycMatrix& b);

}  // namespace framelet
