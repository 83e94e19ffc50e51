#include "framelet/jet.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace framelet {

namespace {

struct TableData {
    MonoTable table;
    std::unordered_map<Index, int, IndexHash> pos;
    std::vector<std::vector<std::pair<int, int>>> mul;   // p -> (q, pos of p+q)
};

std::mutex g_mono_mutex;
std::map<std::pair<int, int>, std::unique_ptr<TableData>> g_mono;

void gen(int dim, int l, int left, Index& cur, std::vector<Index>& out) {
    if (l == dim - 1) {
        cur[l] = left;
        out.push_back(cur);
        cur[l] = 0;
        return;
    }
    for (int v = left; v >= 0; --v) {
        cur[l] = v;
        gen(dim, l + 1, left - v, cur, out);
    }
    cur[l] = 0;
}

const TableData& table_data(int dim, int order) {
    thread_local std::pair<int, int> last_key{-1, -1};
    thread_local const TableData* last = nullptr;
    if (last_key == std::make_pair(dim, order)) return *last;
    std::lock_guard<std::mutex> lock(g_mono_mutex);
    auto key = std::make_pair(dim, order);
    auto it = g_mono.find(key);
    if (it == g_mono.end()) {
        auto t = std::make_unique<TableData>();
        t->table.dim = dim;
        t->table.order = order;
        for (int g = 0; g < order; ++g) {
            t->table.degree_start.push_back(static_cast<int>(t->table.mono.size()));
            Index cur;
            gen(dim, 0, g, cur, t->table.mono);
        }
        t->table.degree_start.push_back(static_cast<int>(t->table.mono.size()));
        for (int p = 0; p < t->table.size(); ++p) t->pos[t->table.mono[p]] = p;
        t->mul.resize(t->table.size());
        for (int p = 0; p < t->table.size(); ++p)
            for (int q = 0; q < t->table.size(); ++q) {
                Index s = t->table.mono[p] + t->table.mono[q];
                if (s.total() < order) t->mul[p].emplace_back(q, t->pos[s]);
            }
        it = g_mono.emplace(key, std::move(t)).first;
    }
    last_key = key;
    last = it->second.get();
    return *last;
}

}  // namespace

int MonoTable::find(const Index& mu) const {
    const auto& d = table_data(dim, order);
    auto it = d.pos.find(mu);
    return it == d.pos.end() ? -1 : it->second;
}

const MonoTable& mono_table(int dim, int order) { return table_data(dim, order).table; }

Rational factorial(const Index& mu, int dim) {
    Integer f = 1;
    for (int l = 0; l < dim; ++l)
        for (int t = 2; t <= mu[l]; ++t) f *= t;
    return Rational(f);
}

std::vector<Index> multi_indices(int dim, int m) {
    const auto& t = mono_table(dim, m + 1);
    return std::vector<Index>(t.mono.begin() + t.degree_start[m], t.mono.begin() + t.degree_start[m + 1]);
}

// ---------------------------------------------------------------- Jet

Jet::Jet(int dim, int order) : dim_(dim), order_(order), c_(mono_table(dim, order).size()) {}

Jet Jet::constant(int dim, int order, const CycNum& c) {
    Jet j(dim, order);
    if (order > 0) j.c_[0] = c;
    return j;
}

CycNum Jet::derivative(const Index& mu) const { return coeff(mu).scaled(factorial(mu, dim_)); }

void Jet::set_derivative(const Index& mu, const CycNum& v) {
    c_[table().find(mu)] = v.scaled(1 / factorial(mu, dim_));
}

bool Jet::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

int Jet::vanish_order() const {
    const auto& t = table();
    for (int p = 0; p < t.size(); ++p)
        if (!c_[p].is_zero()) return t.mono[p].total();
    return order_;
}

Jet Jet::truncated(int order) const {
    if (order > order_) throw std::invalid_argument("cannot extend a jet");
    Jet r(dim_, order);
    for (int p = 0; p < r.table().size(); ++p) r.c_[p] = c_[p];
    return r;
}

Jet Jet::padded(int order) const {
    if (order < order_) throw std::invalid_argument("padding would truncate");
    Jet r(dim_, order);
    for (size_t p = 0; p < c_.size(); ++p) r.c_[p] = c_[p];
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.order_ != order_ || o.dim_ != dim_) throw std::invalid_argument("jet order mismatch");
    for (size_t p = 0; p < c_.size(); ++p) c_[p] += o.c_[p];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.order_ != order_ || o.dim_ != dim_) throw std::invalid_argument("jet order mismatch");
    for (size_t p = 0; p < c_.size(); ++p) c_[p] -= o.c_[p];
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_ || a.dim_ != b.dim_) throw std::invalid_argument("jet order mismatch");
    Jet r(a.dim_, a.order_);
    const auto& d = table_data(a.dim_, a.order_);
    for (size_t p = 0; p < a.c_.size(); ++p) {
        if (a.c_[p].is_zero()) continue;
        for (auto [q, s] : d.mul[p])
            if (!b.c_[q].is_zero()) r.c_[s] += a.c_[p] * b.c_[q];
    }
    return r;
}

bool operator==(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_ || a.dim_ != b.dim_) return false;
    for (size_t p = 0; p < a.c_.size(); ++p)
        if (a.c_[p] != b.c_[p]) return false;
    return true;
}

Jet Jet::scaled(const CycNum& c) const {
    Jet r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

Jet Jet::conj() const {
    Jet r = *this;
    for (auto& x : r.c_) x = x.conj();
    return r;
}

Jet Jet::compose(const RatMatrix& a) const {
    const auto& t = table();
    std::vector<Jet> lin(dim_, Jet(dim_, order_));
    if (order_ > 1)
        for (int l = 0; l < dim_; ++l)
            for (int j = 0; j < dim_; ++j) lin[l].c_[t.find(Index::unit(j))] = CycNum(a[l][j]);
    // powers of the linear forms, built along the table
    std::vector<Jet> pw(t.size());
    Jet r(dim_, order_);
    for (int p = 0; p < t.size(); ++p) {
        const Index& nu = t.mono[p];
        if (p == 0) {
            pw[0] = constant(dim_, order_, CycNum(1L));
        } else {
            int l = 0;
            while (nu[l] == 0) ++l;
            pw[p] = pw[t.find(nu - Index::unit(l))] * lin[l];
        }
        if (!c_[p].is_zero()) r += pw[p].scaled(c_[p]);
    }
    return r;
}

Jet Jet::inverse() const {
    if (order_ == 0) return *this;
    if (c_[0].is_zero()) throw std::domain_error("jet inverse needs a nonzero constant term");
    const auto& t = table();
    CycNum inv0 = c_[0].inverse();
    Jet g(dim_, order_);
    g.c_[0] = inv0;
    for (int p = 1; p < t.size(); ++p) {
        const Index& mu = t.mono[p];
        CycNum s;
        for (int q = 1; q <= p; ++q) {
            const Index& nu = t.mono[q];
            bool le = true;
            for (int l = 0; l < dim_; ++l) le = le && nu[l] <= mu[l];
            if (!le || c_[q].is_zero()) continue;
            s += c_[q] * g.c_[t.find(mu - nu)];
        }
        g.c_[p] = -(s * inv0);
    }
    return g;
}

// ---------------------------------------------------------------- JetMatrix

JetMatrix::JetMatrix(int rows, int cols, int dim, int order)
    : rows_(rows), cols_(cols), dim_(dim), order_(order), e_(static_cast<size_t>(rows) * cols, Jet(dim, order)) {}

JetMatrix JetMatrix::identity(int r, int dim, int order) {
    JetMatrix m(r, r, dim, order);
    for (int i = 0; i < r; ++i) m(i, i) = Jet::constant(dim, order, CycNum(1L));
    return m;
}

JetMatrix JetMatrix::unit_row(int r, int pos, int dim, int order) {
    JetMatrix m(1, r, dim, order);
    m(0, pos) = Jet::constant(dim, order, CycNum(1L));
    return m;
}

JetMatrix JetMatrix::unit_col(int r, int pos, int dim, int order) {
    JetMatrix m(r, 1, dim, order);
    m(pos, 0) = Jet::constant(dim, order, CycNum(1L));
    return m;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("jet matrix shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

JetMatrix& JetMatrix::operator-=(const JetMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("jet matrix shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("jet matrix shape mismatch");
    JetMatrix c(a.rows_, b.cols_, a.dim_, a.order_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j)
            for (int k = 0; k < a.cols_; ++k) c(i, j) += a(i, k) * b(k, j);
    return c;
}

bool operator==(const JetMatrix& a, const JetMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

JetMatrix JetMatrix::scaled(const CycNum& c) const {
    JetMatrix r = *this;
    for (auto& j : r.e_) j = j.scaled(c);
    return r;
}

JetMatrix JetMatrix::scaled(const Jet& c) const {
    JetMatrix r = *this;
    for (auto& j : r.e_) j = j * c;
    return r;
}

JetMatrix JetMatrix::conj_transpose() const {
    JetMatrix t(cols_, rows_, dim_, order_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
}

JetMatrix JetMatrix::transposed() const {
    JetMatrix t(cols_, rows_, dim_, order_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

JetMatrix JetMatrix::compose(const RatMatrix& a) const {
    JetMatrix r = *this;
    for (auto& j : r.e_) j = j.compose(a);
    return r;
}

JetMatrix JetMatrix::truncated(int order) const {
    JetMatrix r(rows_, cols_, dim_, order);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].truncated(order);
    return r;
}

JetMatrix JetMatrix::padded(int order) const {
    JetMatrix r(rows_, cols_, dim_, order);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].padded(order);
    return r;
}

JetMatrix JetMatrix::value_at_zero() const { return truncated(1); }

int JetMatrix::vanish_order() const {
    int m = order_;
    for (const auto& j : e_) m = std::min(m, j.vanish_order());
    return m;
}

// ---------------------------------------------------------------- jets of filters

Jet jet_of(const LPoly& u, int order, int L) {
    int dim = u.dim();
    Jet j(dim, order);
    if (order == 0 || u.is_zero()) return j;
    const auto& t = mono_table(dim, order);
    std::vector<Integer> km(t.size());
    std::vector<CycNum> sums(t.size());
    for (const auto& [k, v] : u.terms()) {
        km[0] = 1;
        for (int p = 1; p < t.size(); ++p) {
            const Index& mu = t.mono[p];
            int l = 0;
            while (mu[l] == 0) ++l;
            km[p] = km[t.find(mu - Index::unit(l))] * k[l];
        }
        for (int p = 0; p < t.size(); ++p)
            if (km[p] != 0) sums[p] += v.scaled(Rational(km[p]));
    }
    for (int p = 0; p < t.size(); ++p) {
        const Index& mu = t.mono[p];
        CycNum ph = L ? minus_i_pow(mu.total(), L) : CycNum(1L);
        if (L == 0 && mu.total() > 0 && !sums[p].is_zero())
            throw std::invalid_argument("jets of order > 1 need a field order");
        j.coeff(p) = sums[p] * ph.scaled(1 / factorial(mu, dim));
    }
    return j;
}

JetMatrix jet_of(const LMatrix& u, int order, int L) {
    JetMatrix j(u.rows(), u.cols(), u.dim(), order);
    for (int r = 0; r < u.rows(); ++r)
        for (int c = 0; c < u.cols(); ++c) j(r, c) = jet_of(u(r, c), order, L);
    return j;
}

int vanish_order(const LPoly& u, const RatVec& omega, int cap, int L) {
    return jet_of(u.shift(omega, L), cap, L).vanish_order();
}

int vanish_order(const LMatrix& u, const RatVec& omega, int cap, int L) {
    return jet_of(u.shift(omega, L), cap, L).vanish_order();
}

namespace {

std::mutex g_basis_mutex;
std::map<std::tuple<int, int, int>, std::vector<Jet>> g_basis;

const std::vector<Jet>& basis_jets(int dim, int order, int L) {
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    auto key = std::make_tuple(dim, order, L);
    auto it = g_basis.find(key);
    if (it != g_basis.end()) return it->second;
    const auto& t = mono_table(dim, order);
    std::vector<Jet> one_minus(dim);
    for (int l = 0; l < dim; ++l) one_minus[l] = jet_of(LPoly::nabla(dim, Index::unit(l)), order, L);
    std::vector<Jet> b(t.size());
    for (int p = 0; p < t.size(); ++p) {
        const Index& a = t.mono[p];
        if (p == 0) {
            b[0] = Jet::constant(dim, order, CycNum(1L));
            continue;
        }
        int l = 0;
        while (a[l] == 0) ++l;
        b[p] = b[t.find(a - Index::unit(l))] * one_minus[l];
    }
    return g_basis.emplace(key, std::move(b)).first->second;
}

}  // namespace

LPoly taylor_match(const Jet& j, int L) {
    int dim = j.dim(), n = j.order();
    if (L == 0) throw std::invalid_argument("taylor_match needs a field order");
    const auto& t = mono_table(dim, n);
    const auto& basis = basis_jets(dim, n, L);
    Jet rest = j;
    LPoly out(dim);
    CycNum minus_i = -CycNum::imag_unit(L);   // 1 / i
    for (int p = 0; p < t.size(); ++p) {
        if (rest.coeff(p).is_zero()) continue;
        const Index& a = t.mono[p];
        CycNum c = rest.coeff(p);
        for (int s = 0; s < a.total(); ++s) c *= minus_i;
        rest -= basis[p].scaled(c);
        out += LPoly::nabla(dim, a).scaled(c);
    }
    return out;
}

LMatrix taylor_match(const JetMatrix& j, int L) {
    LMatrix m(j.rows(), j.cols(), j.dim());
    for (int r = 0; r < j.rows(); ++r)
        for (int c = 0; c < j.cols(); ++c) m(r, c) = taylor_match(j(r, c), L);
    return m;
}

}  // namespace framelet
