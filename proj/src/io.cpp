#include "framelet/io.hpp"

#include <fstream>
#include <sstream>

namespace framelet::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

Index index_from_json(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) throw ParseError("index must have d entries");
    Index k;
    for (int l = 0; l < dim; ++l) k[l] = j.at(l).get<int>();
    return k;
}

json index_to_json(const Index& k, int dim) {
    json a = json::array();
    for (int l = 0; l < dim; ++l) a.push_back(k[l]);
    return a;
}

int positive_int(const json& j, const char* key) {
    int v = j.at(key).get<int>();
    if (v <= 0) throw ParseError(std::string(key) + " must be positive");
    return v;
}

}  // namespace

json to_json(const CycNum& x, int L) {
    json a = json::array();
    CycNum y = x.lifted(L);
    for (const auto& q : y.coeffs()) a.push_back(rational_to_string(q));
    return a;
}

CycNum cyc_from_json(const json& j, int L) {
    return guarded("field element", [&] {
        if (j.is_string()) return CycNum(parse_rational(j.get<std::string>()));
        if (j.is_number_integer()) return CycNum(static_cast<long>(j.get<long long>()));
        if (!j.is_array() || static_cast<int>(j.size()) != euler_phi(L))
            throw ParseError("field element needs " + std::to_string(euler_phi(L)) + " coefficients");
        std::vector<Rational> c;
        for (const auto& s : j) c.push_back(parse_rational(s.get<std::string>()));
        return CycNum(L, std::move(c));
    });
}

json to_json(const LPoly& p, int L) {
    json terms = json::array();
    for (const auto& [k, v] : p.terms()) terms.push_back({{"k", index_to_json(k, p.dim())}, {"v", to_json(v, L)}});
    return {{"dim", p.dim()}, {"coeffs", terms}};
}

LPoly lpoly_from_json(const json& j, int L, int dim) {
    return guarded("Laurent polynomial", [&] {
        if (j.at("dim").get<int>() != dim) throw ParseError("polynomial dimension mismatch");
        std::vector<LPoly::Term> t;
        for (const auto& c : j.at("coeffs")) t.emplace_back(index_from_json(c.at("k"), dim), cyc_from_json(c.at("v"), L));
        return LPoly::from_terms(dim, std::move(t));
    });
}

json to_json(const LMatrix& m, int L) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k), L));
        rows.push_back(std::move(row));
    }
    return rows;
}

LMatrix lmatrix_from_json(const json& j, int L, int dim, int cols_if_empty) {
    return guarded("filter matrix", [&] {
        if (!j.is_array()) throw ParseError("matrix must be an array of rows");
        int rows = static_cast<int>(j.size());
        int cols = rows ? static_cast<int>(j.at(0).size()) : cols_if_empty;
        LMatrix m(rows, cols, dim);
        for (int i = 0; i < rows; ++i) {
            if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw ParseError("ragged matrix");
            for (int k = 0; k < cols; ++k) m(i, k) = lpoly_from_json(j[i][k], L, dim);
        }
        return m;
    });
}

json to_json(const IntMatrix& m) { return m; }

IntMatrix intmatrix_from_json(const json& j) {
    return guarded("integer matrix", [&] {
        auto m = j.get<IntMatrix>();
        if (m.empty()) throw ParseError("empty integer matrix");
        for (const auto& row : m)
            if (row.size() != m.size()) throw ParseError("integer matrix must be square");
        return m;
    });
}

json to_json(const DualFrameletBank& bank) {
    int L = bank.L;
    json j;
    j["d"] = bank.d;
    j["r"] = bank.r;
    j["s"] = bank.s;
    j["L"] = L;
    j["dilation"] = bank.M.entries;
    j["balancing_matrix"] = bank.N;
    j["a"] = to_json(bank.a, L);
    j["atilde"] = to_json(bank.at, L);
    j["theta"] = to_json(bank.theta, L);
    j["thetatilde"] = to_json(bank.thetat, L);
    j["b"] = to_json(bank.b, L);
    j["btilde"] = to_json(bank.bt, L);
    j["orders"] = {{"m", bank.m}, {"mtilde", bank.mt}};
    j["coset_order"] = gamma_cosets(bank.M);
    if (bank.invertible()) {
        j["theta_inverse"] = to_json(bank.theta_inv, L);
        j["thetatilde_inverse"] = to_json(bank.thetat_inv, L);
    }
    if (bank.U.rows()) j["U"] = to_json(bank.U, L);
    return j;
}

DualFrameletBank bank_from_json(const json& j) {
    return guarded("bank", [&] {
        DualFrameletBank b;
        b.d = positive_int(j, "d");
        b.r = positive_int(j, "r");
        b.s = j.at("s").get<int>();
        b.L = positive_int(j, "L");
        if (b.L % 4) throw ParseError("L must be a multiple of 4");
        b.M = validate_dilation(intmatrix_from_json(j.at("dilation")));
        b.N = intmatrix_from_json(j.at("balancing_matrix"));
        if (b.M.dim != b.d || static_cast<int>(b.N.size()) != b.d) throw ParseError("matrix sizes do not match d");
        if (j.at("coset_order").get<std::vector<IntVec>>() != gamma_cosets(b.M))
            throw ParseError("coset order differs from this library's");
        auto mat = [&](const char* key, int cols) { return lmatrix_from_json(j.at(key), b.L, b.d, cols); };
        b.a = mat("a", b.r);
        b.at = mat("atilde", b.r);
        b.theta = mat("theta", b.r);
        b.thetat = mat("thetatilde", b.r);
        b.b = mat("b", b.r);
        b.bt = mat("btilde", b.r);
        for (const LMatrix* m : {&b.a, &b.at, &b.theta, &b.thetat})
            if (m->rows() != b.r || m->cols() != b.r) throw ParseError("a, atilde, theta, thetatilde must be r x r");
        if (b.b.rows() != b.s || b.bt.rows() != b.s || b.b.cols() != b.r || b.bt.cols() != b.r)
            throw ParseError("b, btilde must be s x r");
        b.m = j.at("orders").at("m").get<int>();
        b.mt = j.at("orders").at("mtilde").get<int>();
        if (j.contains("theta_inverse")) {
            b.theta_inv = mat("theta_inverse", b.r);
            b.thetat_inv = mat("thetatilde_inverse", b.r);
        }
        if (j.contains("U")) b.U = mat("U", b.r);
        return b;
    });
}

json data_to_json(const LMatrix& v, int L, int scale_exponent) {
    // gather per lattice point
    std::map<Index, std::vector<CycNum>> pts;
    for (int c = 0; c < v.cols(); ++c)
        for (const auto& [k, x] : v(0, c).terms()) {
            auto& row = pts.try_emplace(k, std::vector<CycNum>(v.cols())).first->second;
            row[c] = x;
        }
    json entries = json::array();
    for (const auto& [k, row] : pts) {
        json vals = json::array();
        for (const auto& x : row) vals.push_back(to_json(x, L));
        entries.push_back({{"k", index_to_json(k, v.dim())}, {"v", vals}});
    }
    json j = {{"r", v.cols()}, {"d", v.dim()}, {"L", L}, {"entries", entries}};
    if (scale_exponent) j["scale_exponent"] = scale_exponent;
    return j;
}

TaggedSeq data_from_json(const json& j, int L) {
    return guarded("data", [&] {
        int r = positive_int(j, "r"), d = positive_int(j, "d");
        if (j.contains("L") && j.at("L").get<int>() != L) throw ParseError("data field order differs from the bank's");
        std::vector<std::vector<LPoly::Term>> cols(r);
        for (const auto& e : j.at("entries")) {
            Index k = index_from_json(e.at("k"), d);
            const json& vals = e.at("v");
            if (!vals.is_array() || static_cast<int>(vals.size()) != r) throw ParseError("data entry needs r values");
            for (int c = 0; c < r; ++c) cols[c].emplace_back(k, cyc_from_json(vals[c], L));
        }
        LMatrix v(1, r, d);
        for (int c = 0; c < r; ++c) v(0, c) = LPoly::from_terms(d, std::move(cols[c]));
        return TaggedSeq{v, ScaleTag{j.value("scale_exponent", 0)}};
    });
}

json to_json(const Coefficients& c, int L) {
    json w = json::array();
    for (const auto& x : c.w) w.push_back(data_to_json(x.v, L, x.tag.e));
    return {{"levels", c.w.size()}, {"v", data_to_json(c.v.v, L, c.v.tag.e)}, {"w", w}};
}

MaskFile mask_from_json(const json& j) {
    return guarded("mask", [&] {
        MaskFile f;
        f.L = j.value("L", 4);
        if (f.L <= 0 || f.L % 4) throw ParseError("L must be a positive multiple of 4");
        int d = positive_int(j, "d");
        f.mask = lmatrix_from_json(j.at("mask"), f.L, d, 0);
        if (f.mask.rows() == 0 || f.mask.rows() != f.mask.cols()) throw ParseError("mask must be square");
        return f;
    });
}

json mask_to_json(const LMatrix& a, int L) { return {{"L", L}, {"d", a.dim()}, {"mask", to_json(a, L)}}; }

json report_to_json(const Theta1Report& rep) {
    json items = json::array();
    for (const auto& c : rep.details) {
        json e = {{"name", c.name}, {"ok", c.ok}, {"order_found", c.order_found}};
        if (c.obstruction_order >= 0) e["obstruction_order"] = c.obstruction_order;
        if (!c.note.empty()) e["note"] = c.note;
        items.push_back(std::move(e));
    }
    return {{"item_i", rep.item_i},
            {"item_iii", rep.item_iii},
            {"item_iv", rep.item_iv},
            {"item_v", rep.item_v},
            {"conditions", items}};
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace framelet::io
