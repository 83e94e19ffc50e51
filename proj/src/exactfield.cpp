#include "framelet/exactfield.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace framelet {

std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    std::string num = str.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    auto ok = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        size_t i = (allow_sign && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (!ok(num, true) || !ok(den, false)) throw std::invalid_argument("bad rational '" + str + "'");
    Rational q{Integer(num), Integer(den)};
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + str + "'");
    q.canonicalize();
    return q;
}

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

namespace {

using IPoly = std::vector<Integer>;

// Exact division of monic-divisor integer polynomials.
IPoly ipoly_div(IPoly num, const IPoly& den) {
    int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
    IPoly q(dn - dd + 1);
    for (int i = dn - dd; i >= 0; --i) {
        q[i] = num[i + dd];
        for (int j = 0; j <= dd; ++j) num[i + j] -= q[i] * den[j];
    }
    return q;
}

struct FieldTables {
    int phi;
    IPoly cyclo;
    std::vector<std::vector<Integer>> pow_mod;   // x^k mod Phi_L for 0 <= k < L
};

std::mutex g_table_mutex;
std::map<int, std::unique_ptr<FieldTables>> g_tables;
std::map<int, IPoly> g_cyclo;

const IPoly& cyclo_locked(int L) {
    auto it = g_cyclo.find(L);
    if (it != g_cyclo.end()) return it->second;
    IPoly p(L + 1);
    p[0] = -1;
    p[L] = 1;
    for (int d = 1; d < L; ++d)
        if (L % d == 0) p = ipoly_div(p, cyclo_locked(d));
    return g_cyclo.emplace(L, std::move(p)).first->second;
}

const FieldTables& tables(int L) {
    thread_local int last_order = -1;
    thread_local const FieldTables* last = nullptr;
    if (L == last_order) return *last;
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_tables.find(L);
    if (it != g_tables.end()) {
        last_order = L;
        last = it->second.get();
        return *last;
    }
    auto t = std::make_unique<FieldTables>();
    t->cyclo = cyclo_locked(L);
    t->phi = static_cast<int>(t->cyclo.size()) - 1;
    std::vector<Integer> cur(t->phi);
    cur[0] = 1;
    for (int k = 0; k < L; ++k) {
        t->pow_mod.push_back(cur);
        // multiply by x and reduce with the monic Phi_L
        Integer top = cur[t->phi - 1];
        for (int j = t->phi - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
            for (int j = 0; j < t->phi; ++j) cur[j] -= top * t->cyclo[j];
    }
    return *g_tables.emplace(L, std::move(t)).first->second;
}

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// returns (q, r) with a = q b + r
std::pair<QPoly, QPoly> qpoly_divmod(QPoly a, const QPoly& b) {
    trim(a);
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < db) return {QPoly{0}, a};
    QPoly q(da - db + 1);
    for (int i = da - db; i >= 0; --i) {
        q[i] = a[i + db] / b[db];
        for (int j = 0; j <= db; ++j) a[i + j] -= q[i] * b[j];
    }
    a.resize(std::max(db, 1));
    trim(a);
    return {q, a};
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    QPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

bool qpoly_is_zero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

}  // namespace

const std::vector<Integer>& cyclotomic_poly(int L) {
    if (L < 1) throw std::invalid_argument("cyclotomic order must be positive");
    return tables(L).cyclo;
}

const std::vector<Integer>& zeta_power_coeffs(int L, int k) { return tables(L).pow_mod.at(k); }

CycNum::CycNum(int order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
    for (auto& q : c_) q.canonicalize();   // mpq_class(p, q) does not reduce
    if (order_ == 0) {
        if (c_.size() != 1) throw std::invalid_argument("order-0 CycNum holds one rational");
        return;
    }
    if (order_ % 4 != 0) throw std::invalid_argument("field order must be a multiple of 4");
    const auto& t = tables(order_);
    if (static_cast<int>(c_.size()) > t.phi) {
        // reduce a longer power-basis vector
        std::vector<Rational> r(c_.begin(), c_.begin() + t.phi);
        for (size_t k = t.phi; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            const auto& pm = t.pow_mod[k % order_];
            for (int j = 0; j < t.phi; ++j)
                if (pm[j] != 0) r[j] += c_[k] * pm[j];
        }
        c_ = std::move(r);
    }
    c_.resize(t.phi);
}

CycNum CycNum::zero(int order) {
    if (order == 0) return CycNum();
    return CycNum(order, std::vector<Rational>(tables(order).phi));
}

CycNum CycNum::one(int order) {
    CycNum z = zero(order);
    z.c_[0] = 1;
    return z;
}

CycNum CycNum::zeta_pow(long long k, int order) {
    if (order == 0) throw std::invalid_argument("zeta needs a field order");
    const auto& t = tables(order);
    long long kk = ((k % order) + order) % order;
    std::vector<Rational> c(t.phi);
    for (int j = 0; j < t.phi; ++j) c[j] = Rational(t.pow_mod[kk][j]);
    return CycNum(order, std::move(c));
}

// zeta_L = exp(-2 pi i/L) so i = zeta_L^{3L/4}
CycNum CycNum::imag_unit(int order) { return zeta_pow(3LL * order / 4, order); }

bool CycNum::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t j = 1; j < c_.size(); ++j)
        if (c_[j] != 0) return false;
    return true;
}

bool CycNum::is_one() const { return is_rational() && c_[0] == 1; }

CycNum CycNum::lifted(int order) const {
    if (order == order_) return *this;
    if (order_ != 0) throw std::invalid_argument("cannot change field order of a non-rational element");
    CycNum z = zero(order);
    z.c_[0] = c_[0];
    return z;
}

void CycNum::align(CycNum& o) {
    if (order_ == o.order_) return;
    if (order_ == 0) {
        *this = lifted(o.order_);
    } else if (o.order_ == 0) {
        o = o.lifted(order_);
    } else {
        throw std::invalid_argument("mismatched field orders " + std::to_string(order_) + " and " +
                                    std::to_string(o.order_));
    }
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
    if (order_ == o.order_) {
        for (size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
        return *this;
    }
    CycNum b = o;
    align(b);
    for (size_t j = 0; j < c_.size(); ++j) c_[j] += b.c_[j];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum& CycNum::operator*=(const CycNum& o) {
    if (o.order_ == 0) {
        for (auto& q : c_) q *= o.c_[0];
        return *this;
    }
    if (order_ == 0) {
        Rational s = c_[0];
        *this = o;
        for (auto& q : c_) q *= s;
        return *this;
    }
    if (order_ != o.order_) throw std::invalid_argument("mismatched field orders");
    const auto& t = tables(order_);
    int phi = t.phi;
    std::vector<Rational> prod(2 * phi - 1);
    for (int i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < phi; ++j)
            if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (prod[k] == 0) continue;
        const auto& pm = t.pow_mod[k];
        for (int j = 0; j < phi; ++j)
            if (pm[j] != 0) prod[j] += prod[k] * pm[j];
    }
    prod.resize(phi);
    c_ = std::move(prod);
    return *this;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta_L)");
    if (order_ == 0 || is_rational()) {
        CycNum r = *this;
        Rational inv = 1 / c_[0];
        r.c_.assign(c_.size(), Rational(0));
        r.c_[0] = inv;
        return r;
    }
    const auto& t = tables(order_);
    QPoly modulus(t.cyclo.begin(), t.cyclo.end());
    QPoly a(c_.begin(), c_.end());
    trim(a);
    // extended Euclid: s*a + t*Phi = g
    QPoly r0 = modulus, r1 = a, s0{0}, s1{1};
    while (!qpoly_is_zero(r1)) {
        auto [q, rem] = qpoly_divmod(r0, r1);
        QPoly s2 = qpoly_sub(s0, qpoly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw std::domain_error("element not invertible");
    Rational g = r0[0];
    for (auto& q : s0) q /= g;
    auto [qq, rem] = qpoly_divmod(s0, modulus);
    (void)qq;
    rem.resize(t.phi);
    return CycNum(order_, std::move(rem));
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

bool operator==(const CycNum& a, const CycNum& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    if (a.order_ == 0 || b.order_ == 0) return (a - b).is_zero();
    return false;
}

CycNum CycNum::conj() const {
    if (order_ == 0) return *this;
    const auto& t = tables(order_);
    std::vector<Rational> r(t.phi);
    for (int j = 0; j < t.phi; ++j) {
        if (c_[j] == 0) continue;
        const auto& pm = t.pow_mod[(order_ - j) % order_];
        for (int k = 0; k < t.phi; ++k)
            if (pm[k] != 0) r[k] += c_[j] * pm[k];
    }
    return CycNum(order_, std::move(r));
}

CycNum CycNum::scaled(const Rational& q) const {
    CycNum r = *this;
    for (auto& x : r.c_) x *= q;
    return r;
}

std::complex<double> CycNum::approx() const {
    std::complex<double> s = 0;
    for (size_t j = 0; j < c_.size(); ++j) {
        double ang = order_ == 0 ? 0.0 : -2.0 * std::numbers::pi * static_cast<double>(j) / order_;
        s += c_[j].get_d() * std::polar(1.0, ang);
    }
    return s;
}

std::string CycNum::to_string() const {
    std::string s = "[";
    for (size_t j = 0; j < c_.size(); ++j) {
        if (j) s += ",";
        s += rational_to_string(c_[j]);
    }
    return s + "]@" + std::to_string(order_);
}

CycNum field_arith(const CycNum& x, const CycNum& y, char op) {
    if (x.order() != 0 && y.order() != 0 && x.order() != y.order())
        throw std::invalid_argument("mismatched field orders");
    switch (op) {
        case '+': return x + y;
        case '-': return x - y;
        case '*': return x * y;
        case '/': return x / y;
        default: throw std::invalid_argument("unknown field op");
    }
}

CycNum root_of_unity(long long num, long long den, int L) {
    if (den <= 0 || L % den != 0) throw std::invalid_argument("root of unity denominator must divide L");
    long long k = ((L / den) * (num % den)) % L;
    return CycNum::zeta_pow(k, L);
}

CycNum minus_i_pow(int p, int L) {
    int q = ((p % 4) + 4) % 4;
    // (-i)^q for q = 0..3 is 1, -i, -1, i
    switch (q) {
        case 0: return CycNum::one(L);
        case 1: return -CycNum::imag_unit(L);
        case 2: return CycNum::one(L).scaled(-1);
        default: return CycNum::imag_unit(L);
    }
}

}  // namespace framelet
