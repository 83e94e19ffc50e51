// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <sstream>

#include "framelet/construct.hpp"
#include "framelet/dfrt.hpp"
#include "framelet/division.hpp"
#include "framelet/moments.hpp"
#include "framelet/normalform.hpp"
#include "helpers.hpp"

using namespace framelet;
using namespace testutil;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Named {
    std::string name;
    DualFrameletBank bank;
};

// Collects failed sub-checks so the summary line can name them.
struct Tally {
    std::vector<std::string> failed;
    int checks = 0;
    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failed.push_back(what);
    }
    bool ok() const { return failed.empty(); }
};

int failures = 0;

void report(int n, const Tally& t, double secs, const std::string& note = "") {
    std::ostringstream line;
    line << "criterion " << n << ": " << (t.ok() ? "PASS" : "FAIL") << "  (" << t.checks << " checks, " << std::fixed;
    line.precision(1);
    line << secs << " s" << (note.empty() ? "" : "; " + note) << ")";
    for (const auto& f : t.failed) line << "\n    failed: " << f;
    std::puts(line.str().c_str());
    std::fflush(stdout);
    failures += !t.ok();
}

const DilationMatrix& two() {
    static DilationMatrix m = validate_dilation({{2}});
    return m;
}

bool monomial_det(const LMatrix& u) {
    auto d = determinant(u);
    return d.terms().size() == 1;
}

// The five end-to-end checks shared by the d = 1 and d = 2 criteria.
void end_to_end(Tally& t, const ConstructionTrace& tr, const LMatrix& a, const LMatrix& at, int m_expect) {
    const auto& b = tr.bank;
    const int L = b.L;
    t.expect(tr.ok(), "construction checks");
    LMatrix id = LMatrix::identity(b.r, b.d);
    t.expect(b.theta * b.theta_inv == id && monomial_det(b.theta), "theta strongly invertible");
    t.expect(b.thetat * b.thetat_inv == id && monomial_det(b.thetat), "thetatilde strongly invertible");
    auto dffb = verify_dffb(b);
    t.expect(dffb.coset_ok && dffb.freq_ok, "dffb for every omega: " + dffb.failure);

    int cap = b.m + b.mt + 2;
    int sr = sum_rule_order(at, b.M, cap, L).first, srt = sum_rule_order(a, b.M, cap, L).first;
    t.expect(sr == m_expect && srt == m_expect, "independent sum rule orders");
    t.expect(b.m == sr && b.mt == srt, "bank orders equal sum rule orders");
    auto phi = phi_jet_from_mask(b.a, b.M, cap, L), phit = phi_jet_from_mask(b.at, b.M, cap, L);
    t.expect(generator_vmo(b.b, phi, b.M, cap, L) == sr, "vmo(psi)");
    t.expect(generator_vmo(b.bt, phit, b.M, cap, L) == srt, "vmo(psitilde)");

    auto c = compact_filters(b);
    t.expect(balancing_order(c.a, c.b, b.M, b.N, cap, L) == b.m, "balancing order by jets");
    std::mt19937 rng(17);
    auto sp = balanced_sparsity_check(b, b.m + 1, 2, rng);
    t.expect(sp.order == b.m, "balancing order by polynomial data");
}

LMatrix random_input(std::mt19937& rng, int r, int dim) {
    // full box [0,8)^d, each entry a small rational
    std::vector<std::vector<LPoly::Term>> cols(r);
    std::vector<IntVec> pts{IntVec{}};
    for (int l = 0; l < dim; ++l) {
        std::vector<IntVec> next;
        for (const auto& p : pts)
            for (int k = 0; k < 8; ++k) {
                auto q = p;
                q.push_back(k);
                next.push_back(q);
            }
        pts = next;
    }
    for (int c = 0; c < r; ++c)
        for (const auto& p : pts) cols[c].emplace_back(Index::from(p), CycNum(small_rational(rng, 9, 7)));
    LMatrix v(1, r, dim);
    for (int c = 0; c < r; ++c) v(0, c) = LPoly::from_terms(dim, std::move(cols[c]));
    return v;
}

Rational pow_rat(Rational q, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= q;
    return r;
}

// x^k against the indicator of [0,1) and the hat on [0,2]
Rational box_moment(int k) { return Rational(1, k + 1); }
Rational hat_moment(int k) {
    return Rational(1, k + 2) + 2 * (pow_rat(2, k + 1) - 1) / (k + 1) - (pow_rat(2, k + 2) - 1) / (k + 2);
}

}  // namespace

int main() {
    std::vector<Named> banks;

    {  // 1
        auto t0 = Clock::now();
        Tally t;
        LMatrix a = vectorize_scalar_mask(hat_mask(), two(), {{2}});
        try {
            auto tr = construct_dual_multiframelet(a, a, two(), {{2}});
            end_to_end(t, tr, a, a, 2);
            banks.push_back({"hat d=1", tr.bank});
        } catch (const std::exception& e) {
            t.expect(false, std::string("construct threw: ") + e.what());
        }
        double s = seconds_since(t0);
        t.expect(s < 60, "runtime under 60 s");
        report(1, t, s, "r=2, M=2, N=2");
    }

    {  // 2
        auto t0 = Clock::now();
        Tally t;
        DilationMatrix M = validate_dilation({{2, 0}, {0, 2}});
        LMatrix a = vectorize_scalar_mask(tensor_product(hat_mask(), hat_mask()), M, {{1, 1}, {1, -1}});
        try {
            auto tr = construct_dual_multiframelet(a, a, M, {{1, 1}, {1, -1}});
            end_to_end(t, tr, a, a, 2);
            banks.push_back({"hat x hat d=2", tr.bank});
        } catch (const std::exception& e) {
            t.expect(false, std::string("construct threw: ") + e.what());
        }
        double s = seconds_since(t0);
        t.expect(s < 600, "runtime under 10 min");
        report(2, t, s, "r=2, M=2I, N=[[1,1],[1,-1]]");
    }

    // extra one-dimensional banks for the transform criteria
    for (auto [name, a, at] : {std::tuple{"haar d=1", vectorize_scalar_mask(haar_mask(), two(), {{2}}),
                                          vectorize_scalar_mask(haar_mask(), two(), {{2}})},
                               std::tuple{"hat/haar d=1", vectorize_scalar_mask(hat_mask(), two(), {{2}}),
                                          vectorize_scalar_mask(haar_mask(), two(), {{2}})}}) {
        try {
            banks.push_back({name, construct_dual_multiframelet(a, at, two(), {{2}}).bank});
        } catch (const std::exception& e) {
            std::printf("note: %s bank not built: %s\n", name, e.what());
        }
    }

    {  // 3
        auto t0 = Clock::now();
        Tally t;
        std::mt19937 rng(2024);
        for (const auto& [name, b] : banks) {
            auto cf = compact_filters(b);
            for (int trial = 0; trial < 5; ++trial) {
                LMatrix v = random_input(rng, b.r, b.d);
                for (int J = 1; J <= 3; ++J) {
                    auto c = analyze(TaggedSeq{v, ScaleTag{}}, cf.a, cf.b, b.M, J);
                    t.expect(resolve(synthesize(c, cf.at, cf.bt, b.M), b.M) == v,
                             name + " input " + std::to_string(trial) + " J=" + std::to_string(J));
                }
            }
        }
        report(3, t, seconds_since(t0), std::to_string(banks.size()) + " banks");
    }

    {  // 4
        auto t0 = Clock::now();
        Tally t;
        std::mt19937 rng(99);
        for (const auto& [name, b] : banks) {
            auto sp = balanced_sparsity_check(b, b.m + 1, 5, rng);
            t.expect(sp.vanishing_order >= b.m && sp.invariance_order >= b.m, name + ": degree < m annihilated");
            t.expect(sp.random_ok, name + ": random p of degree < m");
            t.expect(sp.witness, name + ": degree-m witness gives w_1 != 0");
            t.expect(sp.order == b.m, name + ": order exactly m");
        }
        report(4, t, seconds_since(t0), "levels j <= 3");
    }

    {  // 5
        auto t0 = Clock::now();
        Tally t;
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> dd(1, 2), mm(1, 3);
        const int L = 4;
        int origin = 0, point = 0, two_zero = 0, two_off = 0;
        for (int i = 0; i < 100; ++i) {
            int dim = dd(rng), m = mm(rng);
            Flavor f = i % 2 ? Flavor::conj : Flavor::plain;
            LPoly c = admissible_origin(rng, dim, m, L, f);
            origin += recompose_origin(divide_at_origin(c, m, f), dim, f) != c;
        }
        for (int i = 0; i < 100; ++i) {
            int dim = dd(rng), m = mm(rng);
            RatVec w = random_omega(rng, dim, 4);
            LPoly c = admissible_point(rng, dim, m, w, L);
            point += recompose_point(divide_at_point(c, m, w, L), dim, w, L) != c;
        }
        for (int i = 0; i < 200; ++i) {
            int dim = dd(rng), m = mm(rng) - 1, mt = mm(rng) - 1;
            RatVec w(dim);
            if (i >= 100)
                do w = random_omega(rng, dim, 4);
                while (w == RatVec(dim));
            LPoly c = admissible_two_point(rng, dim, m, mt, w, L);
            (i < 100 ? two_zero : two_off) += recompose_two_point(divide_two_point(c, m, mt, w, L), dim, w, L) != c;
        }
        t.expect(origin == 0, "divide_at_origin: " + std::to_string(origin) + " of 100");
        t.expect(point == 0, "divide_at_point: " + std::to_string(point) + " of 100");
        t.expect(two_zero == 0, "divide_two_point, omega = 0: " + std::to_string(two_zero) + " of 100");
        t.expect(two_off == 0, "divide_two_point, omega not integer: " + std::to_string(two_off) + " of 100");
        report(5, t, seconds_since(t0), "400 round trips");
    }

    {  // 6
        auto t0 = Clock::now();
        Tally t;
        std::mt19937 rng(6);
        const int L = 4;
        for (int trial = 0; trial < 10; ++trial) {
            int r = trial % 2 ? 3 : 2;
            LMatrix base = vectorize_scalar_mask(hat_mask(), two(), {{r}});
            LMatrix a = conjugate_mask(base, random_strongly_invertible(rng, r, 1, L), two().entries);
            int m = sum_rule_order(a, two(), 6, L).first;
            std::string tag = "mask " + std::to_string(trial) + " (r=" + std::to_string(r) + ")";
            try {
                auto res = normal_form_refinable(a, two(), m, m + 1, L);
                LMatrix id = LMatrix::identity(r, 1);
                t.expect(verify_ideal_normal_form(res.mask, two(), m, m + 1, L), tag + ": ideal normal form");
                t.expect(res.U.U * res.U.inv == id && res.U.inv * res.U.U == id, tag + ": U U^-1 = I");
                t.expect(sum_rule_order(res.mask, two(), 6, L).first == m, tag + ": sum rules kept");
            } catch (const std::exception& e) {
                t.expect(false, tag + " threw: " + e.what());
            }
        }
        report(6, t, seconds_since(t0), "10 masks");
    }

    {  // 7
        auto t0 = Clock::now();
        Tally t;
        const int L = 4, order = 5;
        auto haar = phi_jet_from_mask(LMatrix::scalar(haar_mask()), two(), order, L);
        auto hat = phi_jet_from_mask(LMatrix::scalar(hat_mask()), two(), order, L);
        for (int k = 0; k < order; ++k) {
            Index mu;
            mu[0] = k;
            t.expect(haar.jet(0, 0).derivative(mu) == minus_i_pow(k, L) * CycNum(box_moment(k)),
                     "haar derivative " + std::to_string(k));
            t.expect(hat.jet(0, 0).derivative(mu) == minus_i_pow(k, L) * CycNum(hat_moment(k)),
                     "hat derivative " + std::to_string(k));
        }
        report(7, t, seconds_since(t0), "derivatives 0..4");
    }

    {  // 8
        auto t0 = Clock::now();
        Tally t;
        for (auto [name, p, v] : {std::tuple{"haar", haar_mask(), 1}, std::tuple{"hat", hat_mask(), 2}}) {
            try {
                LMatrix a = LMatrix::scalar(p);
                auto b = construct_scalar(a, a, two());
                auto phi = phi_jet_from_mask(b.a, b.M, 4, b.L), phit = phi_jet_from_mask(b.at, b.M, 4, b.L);
                t.expect(generator_vmo(b.b, phi, b.M, 4, b.L) == v, std::string(name) + ": vmo(psi)");
                t.expect(generator_vmo(b.bt, phit, b.M, 4, b.L) == v, std::string(name) + ": vmo(psitilde)");
                t.expect(verify_dffb(b).ok(), std::string(name) + ": dffb");
            } catch (const std::exception& e) {
                t.expect(false, std::string(name) + " threw: " + e.what());
            }
        }
        report(8, t, seconds_since(t0), "r=1");
    }

    {  // 9
        auto t0 = Clock::now();
        Tally t;
        for (const auto& [name, b] : banks) {
            auto rep = check_theta1_conditions(b);
            t.expect(rep.item_i, name + ": item (i)");
            t.expect(rep.item_iii, name + ": item (iii)");
            t.expect(rep.item_iv, name + ": item (iv)");
            t.expect(rep.item_v, name + ": item (v)");
        }
        LMatrix id = LMatrix::identity(2, 1);
        auto bad = check_theta1_conditions(id, id, id, id, two(), {{2}}, 1, 1, 4);
        t.expect(!bad.item_iii, "diag(1,1) mask must fail item (iii)");
        report(9, t, seconds_since(t0), std::to_string(banks.size()) + " banks plus the diag(1,1) mask");
    }

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
