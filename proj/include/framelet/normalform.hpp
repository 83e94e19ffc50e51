#pragma once

#include "framelet/jet.hpp"
#include "framelet/lattice.hpp"
#include "framelet/lpoly.hpp"

namespace framelet {

// A strongly invertible filter kept together with its inverse.
struct InvertiblePair {
    LMatrix U, inv;
    static InvertiblePair identity(int r, int dim) { return {LMatrix::identity(r, dim), LMatrix::identity(r, dim)}; }
    InvertiblePair inverse() const { return {inv, U}; }
    InvertiblePair transposed() const { return {U.transposed(), inv.transposed()}; }
    // this * o
    InvertiblePair then(const InvertiblePair& o) const { return {U * o.U, o.inv * inv}; }
};

// v U = e_1 + O(n); U is a product of a permutation and unit triangular factors.
InvertiblePair reduce_row_to_e1(const JetMatrix& v, int n, int L);
// u = v U + O(n)
InvertiblePair link_rows(const JetMatrix& v, const JetMatrix& u, int n, int L);
// v U^{-1} = vbar + O(m), U phi = phibar + O(max(m, n)).
InvertiblePair normal_form_general(const JetMatrix& v, const JetMatrix& phi, const JetMatrix& vbar,
                                   const JetMatrix& phibar, int m, int n, int L);

struct NormalFormResult {
    InvertiblePair U;
    LMatrix mask;                   // U(M^T .) a U^{-1}
    JetMatrix phi_jet, matching_jet;
    int m = 0, n = 0;
    bool verified = false;
};

NormalFormResult normal_form_refinable(const LMatrix& a, const DilationMatrix& M, int m, int n, int L);
bool verify_ideal_normal_form(const LMatrix& a, const DilationMatrix& M, int m, int n, int L);

}  // namespace framelet
