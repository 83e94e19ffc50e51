#pragma once

#include <string>
#include <vector>

#include "framelet/jet.hpp"
#include "framelet/lattice.hpp"
#include "framelet/lpoly.hpp"

namespace framelet {

// e^{-2 pi i g.w}
CycNum phase(const IntVec& g, const RatVec& w, int L);

struct CosetDecomp {
    LMatrix base;
    IntMatrix M;
    std::vector<LMatrix> parts;   // aligned with gamma_cosets(M)
};

CosetDecomp coset_split(const LMatrix& u, const IntMatrix& M);
LMatrix coset_assemble(const CosetDecomp& c);

// Block matrices indexed by the cosets; blocks are r x r.
LMatrix P_matrix(const LMatrix& u, const DilationMatrix& M, int L);
LMatrix Q_matrix(const LMatrix& u, const DilationMatrix& M);
LMatrix D_matrix(const LMatrix& u, const RatVec& omega, const DilationMatrix& M, int L);
LMatrix E_matrix(const LMatrix& u, const RatVec& omega, const DilationMatrix& M, int L);
LMatrix F_matrix(int r, const DilationMatrix& M, int L);

// Sequence with a pending global factor d_M^{e/2}.
struct TaggedSeq {
    LMatrix v;
    ScaleTag tag;
};

TaggedSeq subdivision(const TaggedSeq& v, const LMatrix& u, const DilationMatrix& M);
TaggedSeq transition(const TaggedSeq& v, const LMatrix& u, const DilationMatrix& M);
// Multiply out d_M^{e/2} when e is even; throws on an odd tag.
LMatrix resolve(const TaggedSeq& v, const DilationMatrix& M);
// Bring two tagged sequences to a common tag and add them.
TaggedSeq add_tagged(const TaggedSeq& x, const TaggedSeq& y, const DilationMatrix& M);

LMatrix M_matrix(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const DilationMatrix& M, int L);
LMatrix N_matrix(const LMatrix& a, const LMatrix& at, const LMatrix& theta, const DilationMatrix& M, int L);

struct DualFrameletBank {
    int d = 1, r = 1, s = 0, L = 4;
    DilationMatrix M;
    IntMatrix N;
    LMatrix a, at, theta, thetat, b, bt;
    int m = 0, mt = 0;
    JetMatrix v, vt;   // matching filter jets of a and at
    LMatrix U;         // normalizing change of variables, may be empty
    LMatrix theta_inv, thetat_inv;   // empty unless strongly invertible
    LMatrix Theta() const { return theta.adjoint() * thetat; }
    bool invertible() const { return theta_inv.rows() > 0 && thetat_inv.rows() > 0; }
};

// Filters after the change of variables: theta(M^T.) a theta^{-1}, b theta^{-1}
// and the same with thetat on the dual side. They satisfy (dffb) with Theta = I.
struct CompactBank {
    LMatrix a, at, b, bt;
};
CompactBank compact_filters(const DualFrameletBank& bank);

struct DffbReport {
    bool coset_ok = false;
    bool freq_ok = false;
    std::string failure;   // first failing block, empty on success
    bool ok() const { return coset_ok && freq_ok; }
};

DffbReport verify_dffb(const LMatrix& a, const LMatrix& at, const LMatrix& Theta, const LMatrix& b, const LMatrix& bt,
                       const DilationMatrix& M, int L);
DffbReport verify_dffb(const DualFrameletBank& bank);

// Mask of (phi(N. + g_1), ..., phi(N. + g_r))^T from a scalar mask; needs MN = NM.
LMatrix vectorize_scalar_mask(const LPoly& as, const DilationMatrix& M, const IntMatrix& N);

}  // namespace framelet
