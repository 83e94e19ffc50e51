#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <random>

#include "framelet/io.hpp"

namespace framelet::cli {

namespace {

using io::json;

// Inline JSON, or a path to a file holding it.
json json_arg(const std::string& s) {
    if (std::filesystem::exists(s)) return io::parse(io::read_file(s));
    return io::parse(s);
}

DualFrameletBank load_bank(const std::string& path) { return io::bank_from_json(io::parse(io::read_file(path))); }

// Runs the selected suites; a suite that does not apply is reported as "n/a".
class Checker {
public:
    Checker(const DualFrameletBank& bank, std::uint64_t seed) : b_(bank), rng_(seed) {}

    json run(const std::vector<std::string>& wanted) {
        static const std::vector<std::string> all{"oep", "moments", "balancing", "theta1", "normalform"};
        json rep = json::object();
        for (const auto& name : wanted.empty() ? all : wanted) {
            if (name == "oep") rep[name] = oep();
            else if (name == "moments") rep[name] = moments();
            else if (name == "balancing") rep[name] = balancing();
            else if (name == "theta1") rep[name] = theta1();
            else if (name == "normalform") rep[name] = normalform();
            else throw std::invalid_argument("unknown condition '" + name + "'");
        }
        return {{"conditions", rep}, {"pass", ok_}, {"failures", failures_}};
    }

private:
    json check(const std::string& name, bool ok, json detail = json::object()) {
        detail["name"] = name;
        detail["ok"] = ok;
        if (!ok) {
            ok_ = false;
            failures_.push_back(name);
        }
        return detail;
    }
    static json not_applicable() { return {{"status", "n/a (r = 1)"}}; }
    int n() const { return b_.m + b_.mt; }

    json oep() {
        json out = json::array();
        auto rep = verify_dffb(b_);
        json d = {{"coset_identity", rep.coset_ok}, {"frequency_identity", rep.freq_ok}};
        if (!rep.ok()) d["failure"] = rep.failure;
        out.push_back(check("dffb", rep.ok(), d));
        LMatrix id = LMatrix::identity(b_.r, b_.d);
        bool inv = b_.invertible() && b_.theta * b_.theta_inv == id && b_.thetat * b_.thetat_inv == id;
        if (b_.r >= 2) {
            out.push_back(check("theta, thetatilde strongly invertible", inv && is_strongly_invertible(b_.theta) &&
                                                                           is_strongly_invertible(b_.thetat)));
        }
        if (inv) {
            auto c = compact_filters(b_);
            auto cr = verify_dffb(c.a, c.at, id, c.b, c.bt, b_.M, b_.L);
            json cd = json::object();
            if (!cr.ok()) cd["failure"] = cr.failure;
            out.push_back(check("dffb, compact bank with Theta = I", cr.ok(), cd));
        }
        return out;
    }

    json moments() {
        json out = json::array();
        int cap = n() + 2;
        int sra = sum_rule_order(b_.a, b_.M, cap, b_.L).first, srt = sum_rule_order(b_.at, b_.M, cap, b_.L).first;
        out.push_back(check("sum rules of atilde = m", srt == b_.m, {{"found", srt}}));
        out.push_back(check("sum rules of a = mtilde", sra == b_.mt, {{"found", sra}}));
        auto phi = phi_jet_from_mask(b_.a, b_.M, cap, b_.L), phit = phi_jet_from_mask(b_.at, b_.M, cap, b_.L);
        int vp = generator_vmo(b_.b, phi, b_.M, cap, b_.L), vt = generator_vmo(b_.bt, phit, b_.M, cap, b_.L);
        out.push_back(check("vmo(psi) >= m", vp >= b_.m, {{"found", vp}}));
        out.push_back(check("vmo(psitilde) >= mtilde", vt >= b_.mt, {{"found", vt}}));
        return out;
    }

    json balancing() {
        if (b_.r < 2) return not_applicable();
        json out = json::array();
        if (!b_.invertible()) {
            out.push_back(check("balancing needs the compact bank", false));
            return out;
        }
        auto c = compact_filters(b_);
        int cap = b_.m + 1;
        int jet = balancing_order(c.a, c.b, b_.M, b_.N, cap, b_.L);
        out.push_back(check("balancing order by jets >= m", jet >= b_.m, {{"found", jet}, {"cap", cap}}));
        auto sp = balanced_sparsity_check(c.a, c.b, b_.M, b_.N, b_.m, cap, 5, rng_, b_.L);
        out.push_back(check("polynomial data: framelet coefficients vanish", sp.order >= b_.m && sp.random_ok,
                            {{"found", sp.order}, {"cap", cap}, {"degree_m_witness", sp.witness}}));
        out.push_back(check("jet and polynomial orders agree", sp.order == jet));
        return out;
    }

    json theta1() {
        if (b_.r < 2) return not_applicable();
        auto rep = check_theta1_conditions(b_);
        return check("lowpass eigenvalue and moment conditions", rep.ok(), io::report_to_json(rep));
    }

    json normalform() {
        if (b_.r < 2) return not_applicable();
        json out = json::array();
        try {
            bool a = normal_form_refinable(b_.a, b_.M, b_.mt, n(), b_.L).verified;
            bool at = normal_form_refinable(b_.at, b_.M, b_.m, n(), b_.L).verified;
            out.push_back(check("a has an ideal (mtilde, n) normal form", a));
            out.push_back(check("atilde has an ideal (m, n) normal form", at));
        } catch (const std::exception& e) {
            out.push_back(check("normal form", false, {{"error", e.what()}}));
        }
        return out;
    }

    const DualFrameletBank& b_;
    std::mt19937 rng_;
    bool ok_ = true;
    json failures_ = json::array();
};

template <class F>
int run_guarded(std::ostream& err, F&& f) {
    try {
        return f();
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const HypothesisError& e) {
        err << "hypothesis failed at " << e.stage << ": " << e.what() << "\n";
        return kHypothesis;
    } catch (const VerificationError& e) {
        err << "verification failed at " << e.stage << ": " << e.what() << "\n";
        return kFail;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << "\n";
        return kHypothesis;
    } catch (const std::domain_error& e) {
        err << "hypothesis failed: " << e.what() << "\n";
        return kHypothesis;
    }
}

std::string support_text(const LMatrix& u) {
    if (u.rows() == 0 || u.is_zero()) return "empty";
    Index lo, hi;
    bool first = true;
    for (const auto& p : u.entries()) {
        if (p.is_zero()) continue;
        auto [l, h] = p.bounding_box();
        for (int i = 0; i < u.dim(); ++i) {
            lo[i] = first ? l[i] : std::min(lo[i], l[i]);
            hi[i] = first ? h[i] : std::max(hi[i], h[i]);
        }
        first = false;
    }
    std::string s;
    for (int i = 0; i < u.dim(); ++i)
        s += (i ? " x " : "") + std::string("[") + std::to_string(lo[i]) + "," + std::to_string(hi[i]) + "]";
    return s + ", " + std::to_string(u.total_terms()) + " terms";
}

std::string matrix_text(const IntMatrix& m) { return json(m).dump(); }

}  // namespace

std::uint64_t effective_seed(std::uint64_t flag) {
    const char* env = std::getenv("FRAMELET_SEED");
    if (!env || !*env) return flag;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    return *end == '\0' ? v : flag;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        auto A = io::mask_from_json(json_arg(a.mask));
        auto At = io::mask_from_json(json_arg(a.dual_mask));
        DilationMatrix M = validate_dilation(io::intmatrix_from_json(json_arg(a.dilation)));
        if (A.mask.dim() != M.dim || At.mask.dim() != M.dim) throw io::ParseError("mask dimension differs from M");
        ConstructOptions opts;
        opts.L = std::lcm(std::lcm(A.L, At.L), construction_field_order(A.mask, At.mask, M));
        DualFrameletBank bank;
        if (a.scalar) {
            bank = construct_scalar(A.mask, At.mask, M, opts);
        } else {
            if (A.mask.rows() < 2) throw HypothesisError("construct", "r >= 2 required (use --scalar for r = 1)");
            if (a.balancing.empty()) throw std::invalid_argument("--balancing is required for r >= 2");
            IntMatrix N = io::intmatrix_from_json(json_arg(a.balancing));
            bank = construct_dual_multiframelet(A.mask, At.mask, M, N, opts).bank;
        }
        json rep = Checker(bank, 1).run({});
        rep["orders"] = {{"m", bank.m}, {"mtilde", bank.mt}};
        rep["s"] = bank.s;
        if (!a.output.empty()) io::write_file(a.output, io::dump(io::to_json(bank)));
        else out << io::dump(io::to_json(bank));
        out << io::dump(rep);
        return rep["pass"].get<bool>() ? kPass : kFail;
    });
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        auto bank = load_bank(a.bank);
        json rep = Checker(bank, effective_seed(a.seed)).run(a.conditions);
        out << io::dump(rep);
        if (!rep["pass"].get<bool>()) {
            err << "failed:";
            for (const auto& f : rep["failures"]) err << " [" << f.get<std::string>() << "]";
            err << "\n";
            return kFail;
        }
        return kPass;
    });
}

int cmd_transform(const TransformArgs& a, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        auto bank = load_bank(a.bank);
        TaggedSeq data = io::data_from_json(io::parse(io::read_file(a.data)), bank.L);
        if (data.v.cols() != bank.r || data.v.dim() != bank.d)
            throw io::ParseError("data shape (r = " + std::to_string(data.v.cols()) +
                                 ", d = " + std::to_string(data.v.dim()) + ") does not match the bank");
        if (a.levels < 0) throw std::invalid_argument("--levels must be >= 0");
        LMatrix v0 = resolve(data, bank.M);
        if (!bank.invertible() && is_strongly_invertible(bank.theta) && is_strongly_invertible(bank.thetat)) {
            bank.theta_inv = strong_inverse(bank.theta);
            bank.thetat_inv = strong_inverse(bank.thetat);
        }
        if (a.compact && !bank.invertible())
            throw HypothesisError("transform", "--compact needs strongly invertible theta and thetatilde");
        Variant v = a.compact ? Variant::compact : Variant::full;
        auto coeffs = analyze(v0, bank, a.levels, v);
        // Without an exact inverse of Theta the full variant stops before deconvolution
        // and compares against v0 * Theta instead.
        bool deconvolved = a.compact || bank.invertible() || is_strongly_invertible(bank.Theta());
        bool pr;
        if (deconvolved) {
            pr = reconstruct(coeffs, bank, v) == v0;
        } else {
            LMatrix Theta = bank.Theta();
            pr = resolve(synthesize(coeffs, bank.at, bank.bt, bank.M, &Theta), bank.M) == v0 * Theta;
        }
        if (!a.output.empty()) io::write_file(a.output, io::dump(io::to_json(coeffs, bank.L)));
        out << io::dump({{"levels", a.levels},
                         {"variant", a.compact ? "compact" : "full"},
                         {"deconvolved", deconvolved},
                         {"perfect_reconstruction", pr}});
        if (!pr) err << "perfect reconstruction failed\n";
        return pr ? kPass : kFail;
    });
}

int cmd_report(const std::string& path, std::ostream& out, std::ostream& err) {
    return run_guarded(err, [&] {
        auto b = load_bank(path);
        int cap = b.m + b.mt + 2;
        auto phi = phi_jet_from_mask(b.a, b.M, cap, b.L), phit = phi_jet_from_mask(b.at, b.M, cap, b.L);
        auto row = [&](const std::string& k, const std::string& v) {
            out << std::left << std::setw(26) << k << v << "\n";
        };
        row("d", std::to_string(b.d));
        row("r", std::to_string(b.r));
        row("s", std::to_string(b.s));
        row("field order L", std::to_string(b.L));
        row("dilation M", matrix_text(b.M.entries));
        row("balancing N", b.r >= 2 ? matrix_text(b.N) : "n/a (r = 1)");
        row("m / mtilde", std::to_string(b.m) + " / " + std::to_string(b.mt));
        row("vmo(psi) / vmo(psitilde)", std::to_string(generator_vmo(b.b, phi, b.M, cap, b.L)) + " / " +
                                            std::to_string(generator_vmo(b.bt, phit, b.M, cap, b.L)));
        if (b.r >= 2 && b.invertible()) {
            auto c = compact_filters(b);
            row("balancing order", std::to_string(balancing_order(c.a, c.b, b.M, b.N, b.m + 2, b.L)));
        } else {
            row("balancing order", "n/a (r = 1)");
        }
        auto yn = [](bool x) { return std::string(x ? "yes" : "no"); };
        row("theta strongly inv.", yn(is_strongly_invertible(b.theta)));
        row("thetatilde strongly inv.", yn(is_strongly_invertible(b.thetat)));
        row("Theta strongly inv.", yn(is_strongly_invertible(b.Theta())));
        for (auto [name, u] : {std::pair<const char*, const LMatrix*>{"support a", &b.a}, {"support atilde", &b.at},
                               {"support theta", &b.theta}, {"support thetatilde", &b.thetat},
                               {"support b", &b.b}, {"support btilde", &b.bt}})
            row(name, support_text(*u));
        return kPass;
    });
}

}  // namespace framelet::cli
