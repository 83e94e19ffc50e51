#include "framelet/lpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "framelet/kernels.hpp"

namespace framelet {

Index Index::from(const IntVec& v) {
    if (v.size() > kMaxDim) throw std::invalid_argument("dimension above supported maximum");
    Index k;
    for (size_t i = 0; i < v.size(); ++i) k.c[i] = static_cast<int>(v[i]);
    return k;
}

Index apply(const IntMatrix& m, const Index& k, int dim) {
    Index r;
    for (int i = 0; i < dim; ++i) {
        long long s = 0;
        for (int j = 0; j < dim; ++j) s += m[i][j] * k[j];
        r[i] = static_cast<int>(s);
    }
    return r;
}

LPoly::LPoly(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("unsupported dimension");
}

LPoly LPoly::from_terms(int dim, std::vector<Term> terms) {
    LPoly p(dim);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second += t.second;
        } else {
            if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().second.is_zero()) p.terms_.pop_back();
    return p;
}

LPoly LPoly::constant(int dim, const CycNum& c) { return monomial(dim, Index(), c); }

LPoly LPoly::monomial(int dim, const Index& k, const CycNum& c) {
    LPoly p(dim);
    if (!c.is_zero()) p.terms_.emplace_back(k, c);
    return p;
}

LPoly LPoly::nabla(int dim, const Index& alpha) {
    LPoly p = delta(dim);
    for (int l = 0; l < dim; ++l) {
        LPoly f = delta(dim) - monomial(dim, Index::unit(l));
        for (int t = 0; t < alpha[l]; ++t) p = p * f;
    }
    return p;
}

CycNum LPoly::coeff(const Index& k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, const Index& key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return CycNum();
}

int LPoly::field_order() const {
    for (const auto& t : terms_)
        if (t.second.order()) return t.second.order();
    return 0;
}

LPoly LPoly::operator-() const {
    LPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

namespace {

std::vector<LPoly::Term> merge(const std::vector<LPoly::Term>& a, const std::vector<LPoly::Term>& b, bool subtract) {
    std::vector<LPoly::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
            ++j;
        } else {
            CycNum v = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

LPoly& LPoly::operator+=(const LPoly& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("dimension mismatch");
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch");
    if (a.is_zero() || b.is_zero()) return LPoly(a.dim_);
    if (a.size() == 1) return b.times_monomial(a.terms_[0].first).scaled(a.terms_[0].second);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].first).scaled(b.terms_[0].second);
    if (a.size() * b.size() < kernels::kParallelThreshold) return kernels::convolve_serial(a, b);
    return kernels::convolve_parallel(a, b);
}

bool operator==(const LPoly& a, const LPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].first != b.terms_[i].first || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

LPoly LPoly::scaled(const CycNum& c) const {
    if (c.is_zero()) return LPoly(dim_);
    LPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
}

LPoly LPoly::adjoint() const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [k, v] : terms_) t.emplace_back(-k, v.conj());
    return from_terms(dim_, std::move(t));
}

LPoly LPoly::dilate(const IntMatrix& m) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [k, v] : terms_) t.emplace_back(apply(m, k, dim_), v);
    return from_terms(dim_, std::move(t));
}

LPoly LPoly::shift(const RatVec& omega, int L) const {
    // coefficient at k picks up exp(-2 pi i k.omega)
    Integer den = 1;
    for (const auto& w : omega) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den_mpz_t());
    if (den == 1) return *this;
    if (L == 0 || L % den.get_si() != 0) throw std::invalid_argument("phase not representable in Q(zeta_L)");
    long long D = den.get_si();
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [k, v] : terms_) {
        long long num = 0;
        for (int i = 0; i < dim_; ++i) {
            Rational s = omega[i] * static_cast<long>(D);
            num += s.get_num().get_si() * k[i];
        }
        num = ((num % D) + D) % D;
        t.emplace_back(k, v * root_of_unity(num, D, L));
    }
    return from_terms(dim_, std::move(t));
}

LPoly LPoly::times_monomial(const Index& k) const {
    LPoly r = *this;
    for (auto& t : r.terms_) t.first = t.first + k;
    return r;
}

LPoly LPoly::sample(const IntMatrix& m, const Index& gamma) const {
    RatMatrix inv = rat_inverse(m);
    std::vector<Term> t;
    for (const auto& [k, v] : terms_) {
        RatVec x = rat_apply(inv, (k - gamma).to_vec(dim_));
        if (!std::all_of(x.begin(), x.end(), [](const Rational& q) { return q.get_den() == 1; })) continue;
        Index n;
        for (int i = 0; i < dim_; ++i) n[i] = static_cast<int>(x[i].get_num().get_si());
        t.emplace_back(n, v);
    }
    return from_terms(dim_, std::move(t));
}

LPoly LPoly::lifted(int L) const {
    LPoly r = *this;
    for (auto& t : r.terms_) t.second = t.second.lifted(L);
    return r;
}

std::complex<double> LPoly::eval(const std::vector<double>& xi) const {
    std::complex<double> s = 0;
    for (const auto& [k, v] : terms_) {
        double ph = 0;
        for (int i = 0; i < dim_; ++i) ph -= k[i] * xi[i];
        s += v.approx() * std::polar(1.0, ph);
    }
    return s;
}

std::pair<Index, Index> LPoly::bounding_box() const {
    Index lo, hi;
    if (terms_.empty()) return {lo, hi};
    lo = hi = terms_[0].first;
    for (const auto& [k, v] : terms_)
        for (int i = 0; i < dim_; ++i) {
            lo[i] = std::min(lo[i], k[i]);
            hi[i] = std::max(hi[i], k[i]);
        }
    return {lo, hi};
}

// ---------------------------------------------------------------- LMatrix

LMatrix::LMatrix(int rows, int cols, int dim)
    : rows_(rows), cols_(cols), dim_(dim), e_(static_cast<size_t>(rows) * cols, LPoly(dim)) {}

LMatrix LMatrix::identity(int r, int dim) {
    LMatrix m(r, r, dim);
    for (int i = 0; i < r; ++i) m(i, i) = LPoly::delta(dim);
    return m;
}

LMatrix LMatrix::scalar(const LPoly& p) {
    LMatrix m(1, 1, p.dim());
    m(0, 0) = p;
    return m;
}

LMatrix LMatrix::row(const std::vector<LPoly>& entries) {
    LMatrix m(1, static_cast<int>(entries.size()), entries.at(0).dim());
    for (size_t j = 0; j < entries.size(); ++j) m(0, static_cast<int>(j)) = entries[j];
    return m;
}

LMatrix LMatrix::column(const std::vector<LPoly>& entries) {
    LMatrix m(static_cast<int>(entries.size()), 1, entries.at(0).dim());
    for (size_t i = 0; i < entries.size(); ++i) m(static_cast<int>(i), 0) = entries[i];
    return m;
}

bool LMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const LPoly& p) { return p.is_zero(); });
}

int LMatrix::field_order() const {
    for (const auto& p : e_)
        if (int L = p.field_order()) return L;
    return 0;
}

size_t LMatrix::total_terms() const {
    size_t n = 0;
    for (const auto& p : e_) n += p.size();
    return n;
}

LMatrix LMatrix::operator-() const {
    LMatrix r = *this;
    for (auto& p : r.e_) p = -p;
    return r;
}

LMatrix& LMatrix::operator+=(const LMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in matrix add");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

LMatrix& LMatrix::operator-=(const LMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in matrix subtract");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

LMatrix operator*(const LMatrix& a, const LMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in matrix product");
    LMatrix c(a.rows_, b.cols_, a.dim_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            LPoly s(a.dim_);
            for (int k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
                s += a(i, k) * b(k, j);
            }
            c(i, j) = std::move(s);
        }
    return c;
}

bool operator==(const LMatrix& a, const LMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

LMatrix LMatrix::scaled(const CycNum& c) const {
    return map([&](const LPoly& p) { return p.scaled(c); });
}

LMatrix LMatrix::transposed() const {
    LMatrix t(cols_, rows_, dim_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

LMatrix LMatrix::adjoint() const {
    LMatrix t(cols_, rows_, dim_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).adjoint();
    return t;
}

LMatrix LMatrix::dilate(const IntMatrix& m) const {
    return map([&](const LPoly& p) { return p.dilate(m); });
}

LMatrix LMatrix::shift(const RatVec& omega, int L) const {
    return map([&](const LPoly& p) { return p.shift(omega, L); });
}

LMatrix LMatrix::map(const std::function<LPoly(const LPoly&)>& f) const {
    LMatrix r = *this;
    for (auto& p : r.e_) p = f(p);
    return r;
}

LMatrix LMatrix::block(int r0, int c0, int nr, int nc) const {
    LMatrix b(nr, nc, dim_);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void LMatrix::set_block(int r0, int c0, const LMatrix& b) {
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

LMatrix LMatrix::lifted(int L) const {
    return map([&](const LPoly& p) { return p.lifted(L); });
}

LMatrix LMatrix::vstack(const std::vector<LMatrix>& parts) {
    int rows = 0;
    for (const auto& p : parts) rows += p.rows_;
    LMatrix out(rows, parts.at(0).cols_, parts[0].dim_);
    int r = 0;
    for (const auto& p : parts) {
        if (p.cols_ != out.cols_) throw std::invalid_argument("vstack column mismatch");
        out.set_block(r, 0, p);
        r += p.rows_;
    }
    return out;
}

LMatrix LMatrix::hstack(const std::vector<LMatrix>& parts) {
    int cols = 0;
    for (const auto& p : parts) cols += p.cols_;
    LMatrix out(parts.at(0).rows_, cols, parts[0].dim_);
    int c = 0;
    for (const auto& p : parts) {
        if (p.rows_ != out.rows_) throw std::invalid_argument("hstack row mismatch");
        out.set_block(0, c, p);
        c += p.cols_;
    }
    return out;
}

// ---------------------------------------------------------------- determinants

namespace {

LPoly det_rec(const LMatrix& u, std::vector<int>& rows_left, int col) {
    int n = u.cols();
    if (col == n) return LPoly::delta(u.dim());
    LPoly s(u.dim());
    int sign = 1;
    for (size_t idx = 0; idx < rows_left.size(); ++idx) {
        int r = rows_left[idx];
        if (!u(r, col).is_zero()) {
            std::vector<int> rest = rows_left;
            rest.erase(rest.begin() + static_cast<long>(idx));
            LPoly minor = det_rec(u, rest, col + 1);
            if (!minor.is_zero()) {
                LPoly t = u(r, col) * minor;
                if (sign > 0) s += t;
                else s -= t;
            }
        }
        sign = -sign;
    }
    return s;
}

}  // namespace

LPoly determinant(const LMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    std::vector<int> rows(u.rows());
    std::iota(rows.begin(), rows.end(), 0);
    return det_rec(u, rows, 0);
}

LMatrix adjugate(const LMatrix& u) {
    int n = u.rows();
    if (n != u.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
    LMatrix adj(n, n, u.dim());
    if (n == 1) {
        adj(0, 0) = LPoly::delta(u.dim());
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            LMatrix minor(n - 1, n - 1, u.dim());
            for (int a = 0, ra = 0; a < n; ++a) {
                if (a == i) continue;
                for (int b = 0, cb = 0; b < n; ++b) {
                    if (b == j) continue;
                    minor(ra, cb++) = u(a, b);
                }
                ++ra;
            }
            LPoly c = determinant(minor);
            adj(j, i) = ((i + j) % 2) ? -c : c;
        }
    return adj;
}

bool is_strongly_invertible(const LMatrix& u) {
    if (u.rows() != u.cols()) return false;
    return determinant(u).size() == 1;
}

LMatrix strong_inverse(const LMatrix& u) {
    LPoly det = determinant(u);
    if (det.size() != 1) throw std::domain_error("matrix is not strongly invertible");
    const auto& [k, c] = det.terms()[0];
    LPoly inv = LPoly::monomial(u.dim(), -k, c.inverse());
    return adjugate(u).map([&](const LPoly& p) { return p * inv; });
}

LMatrix permutation_matrix(const std::vector<int>& perm, int dim) {
    int r = static_cast<int>(perm.size());
    LMatrix p(r, r, dim);
    for (int j = 0; j < r; ++j) p(j, perm[j]) = LPoly::delta(dim);
    return p;
}

}  // namespace framelet
