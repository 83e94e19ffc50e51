#include "framelet/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>

namespace framelet {

namespace {

RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) r[i].emplace_back(static_cast<long>(v));
    return r;
}

void require_square(const IntMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("matrix is not square");
    if (m.empty()) throw std::invalid_argument("empty matrix");
}

bool in_unit_cube(const RatVec& x) {
    for (const auto& q : x)
        if (q < 0 || q >= 1) return false;
    return true;
}

bool colex_less(const IntVec& a, const IntVec& b) {
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace

Rational int_det(const IntMatrix& m) {
    require_square(m);
    RatMatrix a = to_rat(m);
    size_t n = a.size();
    Rational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

RatMatrix rat_inverse(const IntMatrix& m) {
    require_square(m);
    size_t n = m.size();
    RatMatrix a = to_rat(m);
    RatMatrix inv(n, RatVec(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::domain_error("singular integer matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (size_t k = 0; k < n; ++k) {
            a[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

IntMatrix transpose(const IntMatrix& m) {
    IntMatrix t(m.empty() ? 0 : m[0].size(), IntVec(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IntMatrix int_matmul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.size(), IntVec(b[0].size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

IntVec int_apply(const IntMatrix& m, const IntVec& v) {
    IntVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

RatVec rat_apply(const RatMatrix& m, const IntVec& v) {
    RatVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * static_cast<long>(v[j]);
    return r;
}

RatVec rat_apply(const RatMatrix& m, const RatVec& v) {
    RatVec r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

IntMatrix identity_int(int d) {
    IntMatrix m(d, IntVec(d));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

DilationMatrix validate_dilation(const IntMatrix& m) {
    require_square(m);
    Rational det = int_det(m);
    Rational ad = abs(det);
    if (ad < 2) throw std::invalid_argument("dilation matrix needs |det| >= 2");
    int d = static_cast<int>(m.size());
    Eigen::MatrixXd e(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) e(i, j) = static_cast<double>(m[i][j]);
    Eigen::EigenSolver<Eigen::MatrixXd> es(e, false);
    for (int i = 0; i < d; ++i)
        if (std::abs(es.eigenvalues()[i]) <= 1.0 + 1e-9)
            throw std::invalid_argument("dilation matrix has an eigenvalue of modulus <= 1");
    DilationMatrix dm;
    dm.entries = m;
    dm.dim = d;
    dm.abs_det = ad.get_num().get_si();
    return dm;
}

std::vector<IntVec> gamma_cosets(const IntMatrix& m) {
    require_square(m);
    size_t d = m.size();
    Rational det = int_det(m);
    if (det == 0) throw std::domain_error("singular lattice matrix");
    long long count = Rational(abs(det)).get_num().get_si();
    RatMatrix inv = rat_inverse(m);
    IntVec lo(d, 0), hi(d, 0);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            if (m[i][j] < 0) lo[i] += m[i][j];
            else hi[i] += m[i][j];
        }
    std::vector<IntVec> found;
    IntVec k = lo;
    while (true) {
        if (in_unit_cube(rat_apply(inv, k))) found.push_back(k);
        size_t i = 0;
        while (i < d && ++k[i] > hi[i]) {
            k[i] = lo[i];
            ++i;
        }
        if (i == d) break;
    }
    if (static_cast<long long>(found.size()) != count) throw std::logic_error("coset enumeration count mismatch");
    std::sort(found.begin(), found.end(), [](const IntVec& a, const IntVec& b) {
        bool za = std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
        bool zb = std::all_of(b.begin(), b.end(), [](long long x) { return x == 0; });
        if (za != zb) return za;
        return colex_less(a, b);
    });
    return found;
}

std::vector<RatVec> omega_cosets(const DilationMatrix& m) {
    IntMatrix mt = m.transposed();
    RatMatrix inv = rat_inverse(mt);
    std::vector<RatVec> out;
    for (const auto& g : gamma_cosets(mt)) out.push_back(rat_apply(inv, g));
    return out;
}

size_t coset_index(const IntMatrix& m, const std::vector<IntVec>& reps, const IntVec& k) {
    RatMatrix inv = rat_inverse(m);
    for (size_t i = 0; i < reps.size(); ++i) {
        IntVec diff(k.size());
        for (size_t j = 0; j < k.size(); ++j) diff[j] = k[j] - reps[i][j];
        RatVec x = rat_apply(inv, diff);
        if (std::all_of(x.begin(), x.end(), [](const Rational& q) { return q.get_den() == 1; })) return i;
    }
    throw std::logic_error("no coset representative found");
}

int default_field_order(const DilationMatrix& m) { return static_cast<int>(lcm_ll(4, m.abs_det)); }

}  // namespace framelet
