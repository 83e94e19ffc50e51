#include "framelet/masks.hpp"

namespace framelet {

LPoly haar_mask() {
    return LPoly::from_terms(1, {{Index::from({0}), CycNum(Rational(1, 2))}, {Index::from({1}), CycNum(Rational(1, 2))}});
}

LPoly haar_highpass() {
    return LPoly::from_terms(1, {{Index::from({0}), CycNum(Rational(1, 2))}, {Index::from({1}), CycNum(Rational(-1, 2))}});
}

LPoly hat_mask() {
    return LPoly::from_terms(1, {{Index::from({0}), CycNum(Rational(1, 4))},
                                 {Index::from({1}), CycNum(Rational(1, 2))},
                                 {Index::from({2}), CycNum(Rational(1, 4))}});
}

LPoly tensor_product(const LPoly& p, const LPoly& q) {
    int dp = p.dim(), dim = dp + q.dim();
    std::vector<LPoly::Term> out;
    for (const auto& [k, v] : p.terms())
        for (const auto& [l, w] : q.terms()) {
            Index s = k;
            for (int i = 0; i < q.dim(); ++i) s[dp + i] = l[i];
            out.emplace_back(s, v * w);
        }
    return LPoly::from_terms(dim, std::move(out));
}

}  // namespace framelet
