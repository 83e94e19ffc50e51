#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace framelet {

using Rational = mpq_class;
using Integer = mpz_class;

std::string rational_to_string(const Rational& q);   // always "p/q"
Rational parse_rational(std::string_view s);          // accepts "p", "p/q", "-p/q"

int euler_phi(int n);
long long lcm_ll(long long a, long long b);

// Coefficients of the L-th cyclotomic polynomial, low degree first (monic).
const std::vector<Integer>& cyclotomic_poly(int L);
// Power-basis coefficients of zeta_L^k reduced mod Phi_L, 0 <= k < L.
const std::vector<Integer>& zeta_power_coeffs(int L, int k);

// Element of Q(zeta_L), zeta_L = exp(-2 pi i / L), stored in the power basis
// modulo Phi_L. Order 0 is a bare rational that adopts the order of whatever it
// is combined with.
class CycNum {
public:
    CycNum() : order_(0), c_(1) {}
    CycNum(const Rational& q) : order_(0), c_(1, q) { c_[0].canonicalize(); }   // NOLINT implicit on purpose
    CycNum(long v) : order_(0), c_(1, Rational(v)) {}     // NOLINT
    CycNum(int order, std::vector<Rational> coeffs);

    static CycNum zero(int order);
    static CycNum one(int order);
    static CycNum zeta_pow(long long k, int order);       // zeta_L^k
    static CycNum imag_unit(int order);                   // i = exp(i pi/2)

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    const Rational& rational_part() const { return c_[0]; }

    CycNum lifted(int order) const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);
    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    CycNum inverse() const;
    CycNum conj() const;
    CycNum scaled(const Rational& q) const;
    std::complex<double> approx() const;
    std::string to_string() const;

private:
    void align(CycNum& other);
    int order_;
    std::vector<Rational> c_;
};

CycNum field_arith(const CycNum& x, const CycNum& y, char op);
CycNum root_of_unity(long long num, long long den, int L);
inline CycNum galois_conj(const CycNum& x) { return x.conj(); }

// Power of (-i) times a rational: (-i)^p.
CycNum minus_i_pow(int p, int L);

// Global factor d_M^{e/2} attached to whole sequences.
struct ScaleTag {
    int e = 0;
    ScaleTag compose(ScaleTag o) const { return {e + o.e}; }
    friend bool operator==(ScaleTag a, ScaleTag b) { return a.e == b.e; }
};

}  // namespace framelet
