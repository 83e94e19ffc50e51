#include "framelet/filterbank.hpp"

#include <stdexcept>

#include "framelet/kernels.hpp"

namespace framelet {

namespace {

LMatrix times_monomial(const LMatrix& u, const Index& k) {
    return u.map([&](const LPoly& p) { return p.times_monomial(k); });
}

LMatrix sample(const LMatrix& u, const IntMatrix& M, const IntVec& gamma) {
    Index g = Index::from(gamma);
    return u.map([&](const LPoly& p) { return p.sample(M, g); });
}

IntVec diff(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

bool integral_sum(const RatVec& a, const RatVec& b, const RatVec& c) {
    for (size_t i = 0; i < a.size(); ++i)
        if (Rational(a[i] + b[i] - c[i]).get_den() != 1) return false;
    return true;
}

LMatrix pow_dm(const LMatrix& v, long long dm, int half) {
    Rational f = 1;
    for (int i = 0; i < half; ++i) f *= static_cast<long>(dm);
    return v.scaled(CycNum(f));
}

std::string first_block_mismatch(const LMatrix& x, const LMatrix& y, int r, const char* what) {
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (x(i, j) != y(i, j))
                return std::string(what) + " block (" + std::to_string(i / r + 1) + "," + std::to_string(j / r + 1) + ")";
    return {};
}

}  // namespace

CycNum phase(const IntVec& g, const RatVec& w, int L) {
    Rational t = 0;
    for (size_t i = 0; i < g.size(); ++i) t += w[i] * static_cast<long>(g[i]);
    if (t.get_den() == 1) return CycNum::one(L);
    return root_of_unity(t.get_num().get_si(), t.get_den().get_si(), L);
}

CosetDecomp coset_split(const LMatrix& u, const IntMatrix& M) {
    CosetDecomp c{u, M, {}};
    for (const auto& g : gamma_cosets(M)) c.parts.push_back(sample(u, M, g));
    return c;
}

LMatrix coset_assemble(const CosetDecomp& c) {
    auto gam = gamma_cosets(c.M);
    LMatrix out(c.parts.at(0).rows(), c.parts[0].cols(), c.parts[0].dim());
    for (size_t i = 0; i < gam.size(); ++i) out += times_monomial(c.parts[i].dilate(c.M), Index::from(gam[i]));
    return out;
}

// P: [u(. + 2 pi w_k)]_k, Q: [u^{[g_k]}]_k, both s x (r d_M).
LMatrix P_matrix(const LMatrix& u, const DilationMatrix& M, int L) {
    std::vector<LMatrix> parts;
    for (const auto& w : omega_cosets(M)) parts.push_back(u.shift(w, L));
    return LMatrix::hstack(parts);
}

LMatrix Q_matrix(const LMatrix& u, const DilationMatrix& M) { return LMatrix::hstack(coset_split(u, M.entries).parts); }

LMatrix D_matrix(const LMatrix& u, const RatVec& omega, const DilationMatrix& M, int L) {
    int r = u.rows();
    auto om = omega_cosets(M);
    int n = static_cast<int>(om.size());
    LMatrix out(r * n, r * n, u.dim());
    for (int l = 0; l < n; ++l) {
        LMatrix us = u.shift(om[l], L);   // row coset shift, not omega
        for (int k = 0; k < n; ++k)
            if (integral_sum(om[l], omega, om[k])) out.set_block(l * r, k * r, us);
    }
    return out;
}

LMatrix E_matrix(const LMatrix& u, const RatVec& omega, const DilationMatrix& M, int L) {
    int r = u.rows();
    auto gam = gamma_cosets(M);
    int n = static_cast<int>(gam.size());
    LMatrix out(r * n, r * n, u.dim());
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            LMatrix blk = sample(u, M.entries, diff(gam[k], gam[l]));
            CycNum ph = phase(gam[k], omega, L);
            out.set_block(l * r, k * r, ph.is_one() ? blk : blk.scaled(ph));
        }
    return out;
}

LMatrix F_matrix(int r, const DilationMatrix& M, int L) {
    auto gam = gamma_cosets(M);
    auto om = omega_cosets(M);
    int n = static_cast<int>(gam.size());
    LMatrix out(r * n, r * n, M.dim);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            LPoly e = LPoly::monomial(M.dim, Index::from(gam[l]), phase(gam[l], om[k], L));
            for (int i = 0; i < r; ++i) out(l * r + i, k * r + i) = e;
        }
    return out;
}

TaggedSeq subdivision(const TaggedSeq& v, const LMatrix& u, const DilationMatrix& M) {
    if (v.v.cols() != u.rows()) throw std::invalid_argument("subdivision: shape mismatch");
    return {v.v.dilate(M.entries) * u, v.tag.compose(ScaleTag{1})};
}

TaggedSeq transition(const TaggedSeq& v, const LMatrix& u, const DilationMatrix& M) {
    if (v.v.cols() != u.cols()) throw std::invalid_argument("transition: shape mismatch");
    LMatrix us = u.adjoint();
    LMatrix out(v.v.rows(), us.cols(), v.v.dim());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) {
            LPoly acc(v.v.dim());
            for (int l = 0; l < us.rows(); ++l) {
                if (v.v(i, l).is_zero() || us(l, j).is_zero()) continue;
                acc += kernels::convolve_sample(v.v(i, l), us(l, j), M.entries);
            }
            out(i, j) = std::move(acc);
        }
    return {out, v.tag.compose(ScaleTag{1})};
}

LMatrix resolve(const TaggedSeq& v, const DilationMatrix& M) {
    if (v.tag.e < 0 || v.tag.e % 2) throw std::domain_error("scale tag is not a nonnegative even exponent");
    return pow_dm(v.v, M.abs_det, v.tag.e / 2);
}

TaggedSeq add_tagged(const TaggedSeq& x, const TaggedSeq& y, const DilationMatrix& M) {
    int lo = std::min(x.tag.e, y.tag.e);
    int dx = x.tag.e - lo, dy = y.tag.e - lo;
    if (dx % 2 || dy % 2) throw std::domain_error("scale tags differ by an odd exponent");
    return {pow_dm(x.v, M.abs_det, dx / 2) + pow_dm(y.v, M.abs_det, dy / 2), ScaleTag{lo}};
}

// diag(Theta(. + 2 pi w_k)) - P_a^* Theta(M^T .) P_at
LMatrix M_matrix(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const DilationMatrix& M, int L) {
    int r = a.rows();
    auto om = omega_cosets(M);
    int n = static_cast<int>(om.size());
    LMatrix out(r * n, r * n, a.dim());
    for (int k = 0; k < n; ++k) out.set_block(k * r, k * r, theta.shift(om[k], L));
    LMatrix pa = P_matrix(a, M, L), pat = P_matrix(at, M, L);
    return out - pa.adjoint() * theta.dilate(M.entries) * pat;
}

// d_M^{-1} E_{Theta,0} - Q_a^* Theta Q_at
LMatrix N_matrix(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const DilationMatrix& M, int L) {
    int d = M.dim;
    LMatrix e = E_matrix(theta, RatVec(d), M, L).scaled(CycNum(Rational(1, static_cast<long>(M.abs_det))));
    return e - Q_matrix(a, M).adjoint() * theta * Q_matrix(at, M);
}

DffbReport verify_dffb(const LMatrix& a, const LMatrix& at, const LMatrix& Theta, const LMatrix& b, const LMatrix& bt,
                       const DilationMatrix& M, int L) {
    DffbReport rep;
    int r = a.rows();
    LMatrix lhs = Q_matrix(b, M).adjoint() * Q_matrix(bt, M);
    LMatrix rhs = N_matrix(a, at, Theta, M, L);
    rep.coset_ok = lhs == rhs;
    if (!rep.coset_ok) rep.failure = first_block_mismatch(lhs, rhs, r, "coset identity");

    rep.freq_ok = true;
    LMatrix as = a.adjoint() * Theta.dilate(M.entries), bs = b.adjoint();
    auto om = omega_cosets(M);
    for (size_t j = 0; j < om.size(); ++j) {
        LMatrix sum = as * at.shift(om[j], L) + bs * bt.shift(om[j], L);
        LMatrix want = j == 0 ? Theta : LMatrix(r, r, a.dim());
        if (sum != want) {
            rep.freq_ok = false;
            if (rep.failure.empty()) rep.failure = "frequency identity at omega_" + std::to_string(j + 1);
            break;
        }
    }
    return rep;
}

CompactBank compact_filters(const DualFrameletBank& bank) {
    if (!bank.invertible()) throw std::invalid_argument("compact_filters: theta not strongly invertible");
    const IntMatrix& m = bank.M.entries;
    return {bank.theta.dilate(m) * bank.a * bank.theta_inv, bank.thetat.dilate(m) * bank.at * bank.thetat_inv,
            bank.b * bank.theta_inv, bank.bt * bank.thetat_inv};
}

DffbReport verify_dffb(const DualFrameletBank& bank) {
    return verify_dffb(bank.a, bank.at, bank.Theta(), bank.b, bank.bt, bank.M, bank.L);
}

LMatrix vectorize_scalar_mask(const LPoly& as, const DilationMatrix& M, const IntMatrix& N) {
    if (int_matmul(M.entries, N) != int_matmul(N, M.entries))
        throw std::invalid_argument("vectorize_scalar_mask needs M N = N M");
    auto gn = gamma_cosets(N);
    int r = static_cast<int>(gn.size());
    LMatrix out(r, r, as.dim());
    for (int i = 0; i < r; ++i) {
        IntVec mg = int_apply(M.entries, gn[i]);
        for (int k = 0; k < r; ++k) out(i, k) = as.sample(N, Index::from(diff(mg, gn[k])));
    }
    return out;
}

}  // namespace framelet
